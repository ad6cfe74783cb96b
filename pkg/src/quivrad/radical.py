"""Radical filtration of the module category and the nilpotency index.

Layer one over a complete list of indecomposables is every Hom space between
distinct nodes plus the radical of each endomorphism algebra; layer n+1 is
spanned by composites of a layer-n morphism after a layer-one morphism,
summed over all intermediate nodes.  All subspaces live in coordinates over
the canonical Hom bases, so membership and equality are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence

from .errors import InconsistencyError, MethodInapplicableError
from .linalg import Subspace
from .quiver import (
    AlgebraPresentation,
    classify,
    sinks_and_sources,
    zero_relation_vertices,
)
from .rep import (
    HomSpace,
    ModuleMorphism,
    Representation,
    are_isomorphic,
    end_radical,
    hom_space,
    injective,
    projective,
    simple,
)


class RadicalFiltration:
    """Descending chains R ⊇ R² ⊇ … for every ordered pair of nodes.

    Layers are computed on demand; ``ensure_complete`` iterates until every
    chain has reached zero, which must happen for representation-finite
    input (a safety bound turns a non-terminating run into an error).
    """

    def __init__(self, pres: AlgebraPresentation, nodes: Sequence[Representation]):
        self.pres = pres
        self.reps = list(nodes)
        n = len(self.reps)
        self.hom: Dict[tuple, HomSpace] = {}
        for i in range(n):
            for j in range(n):
                hs = hom_space(self.reps[i], self.reps[j])
                if hs.dim:
                    self.hom[(i, j)] = hs
        self.chains: Dict[tuple, list] = {}
        self._rad1_out: Dict[int, list] = {}
        for (i, j), hs in self.hom.items():
            if i == j:
                first = end_radical(hs)
            else:
                first = Subspace.full(hs.dim)
            if first.dim:
                self.chains[(i, j)] = [first]
                self._rad1_out.setdefault(i, []).append((j, first))
        self._depth = 1
        self._complete = not self.chains
        self._tensors: Dict[tuple, Optional[list]] = {}
        self._aliases: Dict[str, int] = {}
        self._length_bound = 1 + sum(hs.dim for hs in self.hom.values())

    # -- node bookkeeping ----------------------------------------------------

    def attach_aliases(self, alias_map: Dict[str, int]) -> None:
        self._aliases.update(alias_map)

    def node_index(self, rep: Representation) -> int:
        for i, r in enumerate(self.reps):
            if r is rep:
                return i
        for i, r in enumerate(self.reps):
            if r.same_data(rep):
                return i
        raise ValueError("representation is not a filtration node")

    def node_index_up_to_iso(self, rep: Representation) -> int:
        try:
            return self.node_index(rep)
        except ValueError:
            pass
        for i, r in enumerate(self.reps):
            if r.dim_vector() == rep.dim_vector() and are_isomorphic(r, rep):
                return i
        raise ValueError("no filtration node is isomorphic to the representation")

    def _special_index(self, tag: str, a: str, build) -> int:
        key = f"{tag}_{a}"
        if key in self._aliases:
            return self._aliases[key]
        target = build(self.pres, a)
        for i, r in enumerate(self.reps):
            if r.dim_vector() == target.dim_vector() and are_isomorphic(r, target):
                self._aliases[key] = i
                return i
        raise ValueError(f"{key} is not among the filtration nodes")

    def projective_index(self, a: str) -> int:
        return self._special_index("P", str(a), projective)

    def injective_index(self, a: str) -> int:
        return self._special_index("I", str(a), injective)

    def simple_index(self, a: str) -> int:
        return self._special_index("S", str(a), simple)

    # -- layers ---------------------------------------------------------------

    def hom_pairs(self) -> Iterable[tuple]:
        return self.hom.keys()

    def _tensor(self, i: int, k: int, j: int) -> Optional[list]:
        key = (i, k, j)
        if key in self._tensors:
            return self._tensors[key]
        hij = self.hom.get((i, j))
        hik = self.hom[(i, k)]
        hkj = self.hom[(k, j)]
        if hij is None:
            self._tensors[key] = None  # all composites are zero
            return None
        tensor = []
        for u in range(hik.dim):
            row = []
            for v in range(hkj.dim):
                comp = hkj.basis[v] @ hik.basis[u]
                coords = hij.coords(comp)
                if coords is None:
                    raise InconsistencyError("composite escaped its Hom space")
                row.append(coords)
            tensor.append(row)
        self._tensors[key] = tensor
        return tensor

    def _advance(self) -> None:
        """Compute layer depth+1 for every pair from layer depth and layer 1."""
        n = self._depth
        cur_by_src: Dict[int, list] = {}
        for (k, j), chain in self.chains.items():
            if len(chain) >= n:
                cur_by_src.setdefault(k, []).append((j, chain[n - 1]))
        grew = False
        for i, outs in self._rad1_out.items():
            acc: Dict[int, list] = {}
            for (k, s1) in outs:
                for (j, sn) in cur_by_src.get(k, ()):
                    hij = self.hom.get((i, j))
                    if hij is None:
                        continue
                    tensor = self._tensor(i, k, j)
                    if tensor is None:
                        continue
                    vecs = acc.setdefault(j, [])
                    for fu in s1.basis:
                        for gv in sn.basis:
                            out = [0] * hij.dim
                            for u, cu in enumerate(fu):
                                if not cu:
                                    continue
                                row = tensor[u]
                                for v, cv in enumerate(gv):
                                    if not cv:
                                        continue
                                    cell = row[v]
                                    f = cu * cv
                                    for t, x in enumerate(cell):
                                        if x:
                                            out[t] += f * x
                            if any(out):
                                vecs.append(out)
            for j, vecs in acc.items():
                sub = Subspace.from_vectors(self.hom[(i, j)].dim, vecs)
                if sub.dim:
                    chain = self.chains[(i, j)]
                    if len(chain) != n:
                        raise InconsistencyError("radical chain grew past a zero layer")
                    chain.append(sub)
                    grew = True
        self._depth += 1
        if not grew:
            self._complete = True
        if self._depth > self._length_bound:
            raise InconsistencyError(
                "radical filtration failed to terminate; node list is not a "
                "complete set of indecomposables")

    def ensure_depth(self, n: int) -> None:
        while not self._complete and self._depth < n:
            self._advance()

    def ensure_complete(self) -> None:
        while not self._complete:
            self._advance()

    @property
    def complete(self) -> bool:
        return self._complete

    def layers_computed(self) -> int:
        return max((len(c) for c in self.chains.values()), default=0)

    def subspace(self, i: int, j: int, n: int) -> Subspace:
        """R^n(node_i, node_j) in Hom-basis coordinates."""
        if n < 1:
            raise ValueError("layers are numbered from 1")
        hs = self.hom.get((i, j))
        if hs is None:
            return Subspace.zero(0)
        chain = self.chains.get((i, j), [])
        if n <= len(chain):
            return chain[n - 1]
        if not self._complete:
            self.ensure_depth(n)
            chain = self.chains.get((i, j), [])
        return chain[n - 1] if n <= len(chain) else Subspace.zero(hs.dim)

    def dim_irr(self, i: int, j: int) -> int:
        """dim Irr(node_i, node_j) = dim R - dim R²."""
        self.ensure_depth(2)
        chain = self.chains.get((i, j), [])
        d1 = chain[0].dim if len(chain) >= 1 else 0
        d2 = chain[1].dim if len(chain) >= 2 else 0
        return d1 - d2

    def nilpotency_index(self) -> int:
        self.ensure_complete()
        return 1 + self.layers_computed()


def radical_filtration(nodes, pres: AlgebraPresentation | None = None) -> RadicalFiltration:
    """Build the filtration for a complete indecomposable list.

    ``nodes`` may be a sequence of representations or anything exposing
    ``pres`` and ``reps`` (an AR quiver); the chains are computed lazily and
    ``ensure_complete`` drives them to zero.
    """
    if hasattr(nodes, "reps") and hasattr(nodes, "pres"):
        ar = nodes
        filt = getattr(ar, "filtration", None)
        if isinstance(filt, RadicalFiltration):
            return filt
        return RadicalFiltration(ar.pres, ar.reps)
    reps = list(nodes)
    if pres is None:
        if not reps:
            raise ValueError("cannot infer the presentation from an empty node list")
        pres = reps[0].pres
    return RadicalFiltration(pres, reps)


def morphism_length(f: ModuleMorphism, filt: RadicalFiltration) -> int:
    """Largest n with f ∈ R^n; 0 for morphisms outside the radical."""
    if f.is_zero():
        raise ValueError("the zero morphism has no radical length")
    i = filt.node_index(f.source)
    j = filt.node_index(f.target)
    hs = filt.hom.get((i, j))
    if hs is None:
        raise InconsistencyError("nonzero morphism with empty Hom space")
    coords = hs.coords(f)
    if coords is None:
        raise ValueError("morphism does not intertwine (not in the Hom space)")
    n = 0
    while True:
        nxt = filt.subspace(i, j, n + 1)
        if nxt.dim and nxt.contains_vector(coords):
            n += 1
        else:
            return n


def canonical_r(pres: AlgebraPresentation, filt: RadicalFiltration, a: str) -> int:
    """Radical length of the composite P_a -> S_a -> I_a (well defined)."""
    a = str(a)
    ip = filt.projective_index(a)
    is_ = filt.simple_index(a)
    ii = filt.injective_index(a)
    hp = filt.hom.get((ip, is_))
    hq = filt.hom.get((is_, ii))
    if hp is None or hp.dim != 1 or hq is None or hq.dim != 1:
        raise InconsistencyError(
            f"Hom(P_{a}, S_{a}) and Hom(S_{a}, I_{a}) must be one-dimensional")
    composite = hq.basis[0] @ hp.basis[0]
    if composite.is_zero():
        raise InconsistencyError(f"composite P_{a} -> S_{a} -> I_{a} vanished")
    return morphism_length(composite, filt)


@dataclass(frozen=True)
class NilpotencyReport:
    method: str
    r_A: int
    per_vertex: dict
    vertex_set: tuple
    layers_computed: int
    notes: tuple = ()

    def __post_init__(self):
        if self.r_A < 1:
            raise ValueError("nilpotency index is at least 1")
        for a, r in self.per_vertex.items():
            if self.r_A < r + 1:
                raise ValueError(f"r_A must be at least r_{a}+1")

    def to_json_dict(self) -> dict:
        return {
            "method": self.method,
            "r_A": self.r_A,
            "per_vertex": {a: self.per_vertex[a] for a in sorted(self.per_vertex)},
            "vertex_set": list(self.vertex_set),
            "layers_computed": self.layers_computed,
        }


METHODS = ("direct", "v-set", "zero-relations", "one-per-relation", "toupie", "auto")


def _vertex_once_per_relation(pres: AlgebraPresentation) -> bool:
    counts: Dict[str, int] = {}
    for rel in pres.relations:
        if not rel.is_zero_relation():
            continue
        for v in rel.terms[0][1].interior_vertices():
            counts[v] = counts.get(v, 0) + 1
    return bool(counts) and all(c == 1 for c in counts.values())


def _zero_relation_representatives(pres: AlgebraPresentation) -> tuple:
    reps = []
    for rel in pres.relations:
        if rel.is_zero_relation():
            interior = rel.terms[0][1].interior_vertices()
            if interior:
                reps.append(interior[0])
    return tuple(reps)


def gate_method(pres: AlgebraPresentation, method: str) -> None:
    """Raise MethodInapplicableError when a method's static precondition fails."""
    if method in ("direct", "auto"):
        return
    if method == "v-set":
        if not sinks_and_sources(pres.quiver)[2]:
            raise MethodInapplicableError(
                "every vertex is a sink or a source; the v-set bound needs a middle vertex")
        return
    cls = classify(pres)
    if method == "zero-relations":
        if not cls.is_monomial:
            raise MethodInapplicableError("zero-relations method requires a monomial ideal")
        if not zero_relation_vertices(pres):
            raise MethodInapplicableError(
                "no vertices are involved in zero-relations; fall back to the v-set method")
        return
    if method == "one-per-relation":
        if not cls.is_monomial:
            raise MethodInapplicableError("one-per-relation method requires a monomial ideal")
        if not _vertex_once_per_relation(pres):
            raise MethodInapplicableError(
                "a vertex is involved in more than one zero-relation (or repeatedly in one); "
                "per-relation representatives are not valid here")
        return
    if method == "toupie":
        if cls.toupie is None or cls.toupie.grafo is None:
            raise MethodInapplicableError(
                "toupie method requires the three-branch shape with one zero-relation "
                "branch and one commutativity pair")
        return
    raise ValueError(f"unknown method {method!r}")


def choose_method(pres: AlgebraPresentation) -> str:
    """Preference order for 'auto': toupie > one-per-relation > zero-relations
    > v-set > direct, gated by each method's precondition."""
    cls = classify(pres)
    if cls.toupie is not None and cls.toupie.grafo is not None:
        return "toupie"
    if cls.is_monomial and zero_relation_vertices(pres):
        if _vertex_once_per_relation(pres):
            return "one-per-relation"
        return "zero-relations"
    if sinks_and_sources(pres.quiver)[2]:
        return "v-set"
    return "direct"


def nilpotency_index(pres: AlgebraPresentation, method: str = "direct",
                     filt: RadicalFiltration | None = None,
                     limits=None) -> NilpotencyReport:
    """Nilpotency index of the radical of the module category.

    ``direct`` iterates the filtration to zero; the reduction methods compute
    r over the vertex set their precondition licenses and return max r + 1.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    gate_method(pres, method)
    if filt is None:
        from .artrans import ar_quiver  # deferred: artrans builds on this module
        filt = ar_quiver(pres, limits).filtration

    if method == "auto":
        chosen = choose_method(pres)
        report = nilpotency_index(pres, chosen, filt=filt)
        return NilpotencyReport(
            method="auto",
            r_A=report.r_A,
            per_vertex=report.per_vertex,
            vertex_set=report.vertex_set,
            layers_computed=report.layers_computed,
            notes=(f"selected {chosen}",) + report.notes,
        )

    if method == "direct":
        r = filt.nilpotency_index()
        return NilpotencyReport("direct", r, {}, (), filt.layers_computed())

    if method == "v-set":
        _, _, middle = sinks_and_sources(pres.quiver)
        per = {a: canonical_r(pres, filt, a) for a in middle}
        return NilpotencyReport("v-set", max(per.values()) + 1, per, tuple(middle),
                                filt.layers_computed())

    if method == "zero-relations":
        r0 = zero_relation_vertices(pres)
        per = {a: canonical_r(pres, filt, a) for a in r0}
        return NilpotencyReport("zero-relations", max(per.values()) + 1, per, tuple(r0),
                                filt.layers_computed())

    if method == "one-per-relation":
        reps = _zero_relation_representatives(pres)
        per = {a: canonical_r(pres, filt, a) for a in reps}
        return NilpotencyReport("one-per-relation", max(per.values()) + 1, per, tuple(reps),
                                filt.layers_computed())

    if method == "toupie":
        g = classify(pres).toupie.grafo
        branch = classify(pres).toupie.branches[g.zero_branch]
        rep_vertex = branch.vertices[g.j - 1]
        per = {rep_vertex: canonical_r(pres, filt, rep_vertex)}
        return NilpotencyReport("toupie", per[rep_vertex] + 1, per, (rep_vertex,),
                                filt.layers_computed())

    raise AssertionError("unreachable")
