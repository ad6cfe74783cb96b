"""Deterministic generator of small representation-finite monomial presentations.

The quivers are random orientations of type-A chains and type-D forks, which
are representation-finite already as hereditary algebras; adding zero-relations
passes to a quotient, which only shrinks the module category.  So every sample
is representation-finite by construction and the guard limits are a formality.
"""
import random

from quivrad import parse_presentation, ar_quiver
from quivrad.artrans import EnumerationLimits


def _random_source(rng: random.Random) -> str:
    n = rng.randint(2, 6)
    vertices = [str(i + 1) for i in range(n)]
    edges = [(i, i + 1) for i in range(n - 1)]
    if n >= 4 and rng.random() < 0.4:
        # type D: re-hang the last vertex as a second branch at the fork
        edges[-1] = (n - 3, n - 1)
    lines = ["vertex " + " ".join(vertices)]
    arrows = []
    for k, (i, j) in enumerate(edges, start=1):
        if rng.random() < 0.5:
            i, j = j, i
        arrows.append((f"x{k}", vertices[i], vertices[j]))
        lines.append(f"arrow x{k} {vertices[i]} {vertices[j]}")
    by_source = {}
    for name, s, t in arrows:
        by_source.setdefault(s, []).append((name, t))
    paths = []
    for name, s, t in arrows:
        for name2, t2 in by_source.get(t, ()):
            paths.append([name, name2])
            for name3, _ in by_source.get(t2, ()):
                paths.append([name, name2, name3])
    rng.shuffle(paths)
    chosen = []
    for p in paths[: rng.randint(0, 2)]:
        # skip relations that duplicate or contain an already chosen one
        if any("*".join(q) in "*".join(p) for q in chosen):
            continue
        chosen.append(p)
        lines.append("relation " + "*".join(p))
    return "\n".join(lines) + "\n"


def random_finite_monomial(count: int = 20, seed: int = 20240815):
    """`count` deterministic samples: (source text, presentation, AR quiver)."""
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        text = _random_source(rng)
        pres = parse_presentation(text)
        ar = ar_quiver(pres, EnumerationLimits(max_modules=400, max_total_dim=3000))
        found.append((text, pres, ar))
    return found
