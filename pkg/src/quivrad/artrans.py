"""Auslander-Reiten translate and enumeration of indecomposables.

The translate is computed from a minimal projective presentation: read the
presentation as a matrix of path classes, transport it to the opposite
presentation, take the cokernel there, dualize back.

Enumeration is a knitting closure.  Inverse-translate orbits of the
projectives alone can miss translate-periodic modules (they exist for some
bound quiver algebras), so each node also contributes its almost-split
middle term, rad P for projectives and I/soc for injectives; for a connected
representation-finite algebra the AR quiver is connected, so this closure is
complete.  Guard limits turn a runaway enumeration into an error.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

from .errors import InconsistencyError, LimitsExceededError
from .linalg import RatMatrix, Subspace
from .quiver import AlgebraPresentation, Path
from . import rep as _rep
from .rep import (
    ModuleMorphism,
    Representation,
    are_isomorphic,
    decompose,
    end_radical,
    hom_space,
    injective,
    kernel_submodule,
    minimal_presentation,
    morphism_ambient,
    morphism_from_projective,
    projective,
    quotient_representation,
    radical_submodule,
    restrict_to_submodule,
    simple,
    sum_of_projectives_morphism,
    zero_representation,
)
from .radical import RadicalFiltration


@dataclass(frozen=True)
class EnumerationLimits:
    """Termination guard for the knitting walk."""
    max_modules: int = 10_000
    max_total_dim: int = 10_000  # cumulative over all enumerated modules

    def __post_init__(self):
        if self.max_modules <= 0 or self.max_total_dim <= 0:
            raise ValueError("limits must be positive")


def _op_path(model_op, p: Path) -> Path:
    return Path(model_op.pres.quiver, p.end, tuple(reversed(p.arrows)))


def _reversed_class_coords(model_fwd, model_op, a: str, b: str, coeffs) -> list:
    """Carry coordinates over basis(a,b) to the opposite-side basis(b,a)."""
    op_basis = model_op.basis(b, a)
    out = [0] * len(op_basis)
    for c, p in zip(coeffs, model_fwd.basis(a, b)):
        if not c:
            continue
        for k, x in enumerate(model_op.reduce_path(_op_path(model_op, p))):
            out[k] = out[k] + c * x
    return out


def transpose(M: Representation) -> Representation:
    """Transpose of M, a module over the opposite presentation.

    Zero when M is projective.
    """
    if M.is_zero():
        raise ValueError("zero module has no transpose")
    pres = M.pres
    op = pres.opposite()
    pp = minimal_presentation(M)
    if pp.p1.is_zero():
        return zero_representation(op)
    model = pres.model()
    model_op = op.model()
    # generator offsets of the P1 summands, vertexwise
    offsets1 = []
    run = {v: 0 for v in pres.quiver.vertices}
    for b in pp.p1_summands:
        offsets1.append(dict(run))
        for v in pres.quiver.vertices:
            run[v] += len(model.basis(b, v))
    # P0 summand slices, vertexwise
    slices0 = []
    run0 = {v: 0 for v in pres.quiver.vertices}
    for a in pp.p0_summands:
        start = dict(run0)
        for v in pres.quiver.vertices:
            run0[v] += len(model.basis(a, v))
        slices0.append((start, dict(run0)))
    op_proj = [projective(op, a) for a in pp.p0_summands]
    op_targets = [projective(op, b) for b in pp.p1_summands]
    blocks: Dict[tuple, ModuleMorphism] = {}
    for j, b in enumerate(pp.p1_summands):
        col = offsets1[j][b]  # trivial path sits first in basis(b, b)
        fcol = [row[col] for row in pp.f1.maps[b].data]
        for i, a in enumerate(pp.p0_summands):
            lo, hi = slices0[i][0][b], slices0[i][1][b]
            sigma = fcol[lo:hi]  # coords over basis(a, b)
            if not any(sigma):
                continue
            vec = _reversed_class_coords(model, model_op, a, b, sigma)
            if any(vec):
                blocks[(j, i)] = morphism_from_projective(op, a, op_targets[j], vec)
    source = _rep.direct_sum(op_proj)
    target = _rep.direct_sum(op_targets)
    maps = {}
    for v in op.quiver.vertices:
        data = [[0] * source.dims[v] for _ in range(target.dims[v])]
        ro = 0
        for j, tgt in enumerate(op_targets):
            co = 0
            for i, src in enumerate(op_proj):
                blk = blocks.get((j, i))
                if blk is not None:
                    m = blk.maps[v]
                    for r, row in enumerate(m.data):
                        for c, x in enumerate(row):
                            if x:
                                data[ro + r][co + c] = x
                co += src.dims[v]
            ro += tgt.dims[v]
        maps[v] = RatMatrix(data, cols=source.dims[v])
    g = ModuleMorphism(source, target, maps, check=False)
    spaces = {v: g.maps[v].image() for v in op.quiver.vertices}
    tr, _ = quotient_representation(target, spaces)
    return tr


def ar_translate(M: Representation) -> Optional[Representation]:
    """τM = D(Tr M); None iff M is projective."""
    tr = transpose(M)
    if tr.is_zero():
        return None
    return tr.dual()


def ar_translate_inverse(M: Representation) -> Optional[Representation]:
    """τ⁻¹M = Tr(D M); None iff M is injective."""
    tr = transpose(M.dual())
    if tr.is_zero():
        return None
    return tr


def almost_split_middle(Z: Representation, tau_z: Representation) -> Representation:
    """Middle term of the almost split sequence 0 -> τZ -> E -> Z -> 0.

    The extension class is a nonzero element of Ext¹(Z, τZ) annihilated by
    the radical of End(Z); Ext¹ is presented on Hom(ΩZ, τZ) modulo the
    restrictions from the cover, and E is the pushout cokernel.
    """
    pp = minimal_presentation(Z)
    K, incl = kernel_submodule(pp.epi)
    if K.is_zero():
        raise ValueError("projective module has no almost split sequence ending at it")
    hom_k = hom_space(K, tau_z)
    hom_p0 = hom_space(pp.p0, tau_z)
    ambient = morphism_ambient(K, tau_z)
    factored = Subspace.from_vectors(ambient, [(h @ incl).flatten() for h in hom_p0.basis])
    end_z = hom_space(Z, Z)
    rad_z = end_radical(end_z)
    # generator columns: summand i's generator sits at a running offset in (P0)_{a_i}
    model = Z.pres.model()
    offsets = []
    run = {v: 0 for v in Z.pres.quiver.vertices}
    for a in pp.p0_summands:
        offsets.append(run[a])
        for v in Z.pres.quiver.vertices:
            run[v] += len(model.basis(a, v))
    lifts = []
    for coords in rad_z.basis:
        phi = end_z.element(coords)
        # lift phi through the cover: psi with epi ∘ psi = phi ∘ epi
        images = []
        for a, off in zip(pp.p0_summands, offsets):
            eps_col = [row[off] for row in pp.epi.maps[a].data]
            target_vec = phi.maps[a].apply(eps_col)
            sol = pp.epi.maps[a].solve(target_vec)
            if sol is None:
                raise InconsistencyError("cover is not surjective")
            images.append(sol)
        psi = sum_of_projectives_morphism(Z.pres, pp.p0_summands, pp.p0, images)
        lifts.append(restrict_to_submodule(psi, incl))
    if hom_k.dim == 0:
        raise InconsistencyError("Ext group vanished for a non-projective module")
    rows = []
    for phi_k in lifts:
        cols = [factored.quotient_coords((b @ phi_k).flatten()) for b in hom_k.basis]
        rows.extend(zip(*cols))
    sols = RatMatrix(rows, cols=hom_k.dim).kernel() if rows else Subspace.full(hom_k.dim)
    g = None
    for srow in sols.basis:
        cand = hom_k.element(srow)
        if not factored.contains_vector(cand.flatten()):
            g = cand
            break
    if g is None:
        raise InconsistencyError("no almost split extension class found")
    total = _rep.direct_sum([tau_z, pp.p0])
    spaces = {}
    for v in Z.pres.quiver.vertices:
        vecs = []
        for k in range(K.dims[v]):
            unit = [0] * K.dims[v]
            unit[k] = 1
            gv = g.maps[v].apply(unit)
            iv = incl.maps[v].apply(unit)
            vecs.append(list(gv) + [-x for x in iv])
        spaces[v] = Subspace.from_vectors(total.dims[v], vecs)
    middle, _ = quotient_representation(total, spaces)
    return middle


@dataclass
class ARNode:
    index: int
    rep: Representation
    orbit_root: str
    orbit_power: int           # k >= 0: node is τ^{-k}(root); k < 0: τ^{|k|}(root)
    aliases: tuple = ()

    @property
    def label(self) -> str:
        if self.orbit_power == 0:
            return self.orbit_root
        if self.orbit_power > 0:
            return f"τ^{{-{self.orbit_power}}}{self.orbit_root}"
        return f"τ^{{{-self.orbit_power}}}{self.orbit_root}"

    def display(self) -> str:
        dims = ",".join(str(d) for d in self.rep.dim_vector())
        return f"{self.label} [{dims}]"


class ARQuiver:
    """Nodes are iso-class representatives; arrows carry dim Irr = dim R/R²."""

    def __init__(self, pres: AlgebraPresentation, nodes: List[ARNode],
                 tau: Dict[int, int], filtration: RadicalFiltration):
        self.pres = pres
        self.nodes = nodes
        self.tau = tau                       # non-projective node -> its translate
        self.tau_inverse = {v: k for k, v in tau.items()}
        self.filtration = filtration
        self._alias_map = {}
        for node in nodes:
            for al in node.aliases:
                self._alias_map[al] = node.index

    @property
    def reps(self) -> list:
        return [n.rep for n in self.nodes]

    def node_count(self) -> int:
        return len(self.nodes)

    def find(self, alias: str) -> Optional[ARNode]:
        idx = self._alias_map.get(alias)
        if idx is None:
            for n in self.nodes:
                if n.label == alias:
                    return n
            return None
        return self.nodes[idx]

    def projective_index(self, a: str) -> int:
        return self._alias_map[f"P_{a}"]

    def injective_index(self, a: str) -> int:
        return self._alias_map[f"I_{a}"]

    def simple_index(self, a: str) -> int:
        return self._alias_map[f"S_{a}"]

    def arrows(self) -> list:
        """(source index, target index, dim Irr) for every AR-quiver arrow."""
        out = []
        filt = self.filtration
        for (i, j) in sorted(filt.hom_pairs()):
            m = filt.dim_irr(i, j)
            if m > 0:
                out.append((i, j, m))
        return out

    def _sorted_nodes(self) -> list:
        return sorted(self.nodes, key=lambda n: (n.rep.dim_vector(), n.label))

    def to_dot(self) -> str:
        lines = ["digraph ar_quiver {", "  rankdir=LR;", "  node [shape=box];"]
        order = self._sorted_nodes()
        for node in order:
            lines.append(f'  "{node.display()}";')
        names = {n.index: n.display() for n in self.nodes}
        rank = {n.index: k for k, n in enumerate(order)}
        arrows = sorted(self.arrows(), key=lambda e: (rank[e[0]], rank[e[1]]))
        for s, t, m in arrows:
            attr = f" [label={m}]" if m > 1 else ""
            lines.append(f'  "{names[s]}" -> "{names[t]}"{attr};')
        tau_edges = sorted(self.tau.items(), key=lambda e: (rank[e[0]], rank[e[1]]))
        for y, x in tau_edges:
            lines.append(f'  "{names[x]}" -> "{names[y]}" [style=dashed, constraint=false];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        order = self._sorted_nodes()
        names = {n.index: n.label for n in self.nodes}
        return {
            "nodes": [
                {
                    "label": n.label,
                    "aliases": sorted(n.aliases),
                    "dim_vector": list(n.rep.dim_vector()),
                }
                for n in order
            ],
            "arrows": [
                [names[s], names[t], m]
                for s, t, m in sorted(self.arrows(), key=lambda e: (names[e[0]], names[e[1]]))
            ],
            "tau": {names[y]: names[x] for y, x in sorted(self.tau.items(), key=lambda e: names[e[0]])},
        }


class _Knitter:
    def __init__(self, pres: AlgebraPresentation, limits: EnumerationLimits):
        self.pres = pres
        self.limits = limits
        self.nodes: List[ARNode] = []
        self.buckets: Dict[tuple, list] = {}
        self.tau: Dict[int, int] = {}
        self.total_dim = 0
        self.fresh = 0

    def find_iso(self, rep: Representation) -> Optional[int]:
        for idx in self.buckets.get(rep.dim_vector(), ()):
            if are_isomorphic(rep, self.nodes[idx].rep):
                return idx
        return None

    def add(self, rep: Representation, root: str, power: int) -> int:
        idx = len(self.nodes)
        self.total_dim += rep.total_dim()
        if idx + 1 > self.limits.max_modules or self.total_dim > self.limits.max_total_dim:
            raise LimitsExceededError(
                f"enumeration guard hit after {idx} modules (total dimension "
                f"{self.total_dim}); presentation presumed representation-infinite "
                "within the given limits")
        self.nodes.append(ARNode(idx, rep, root, power))
        self.buckets.setdefault(rep.dim_vector(), []).append(idx)
        return idx

    def find_or_add(self, rep: Representation) -> int:
        idx = self.find_iso(rep)
        if idx is not None:
            return idx
        self.fresh += 1
        return self.add(rep, f"M{self.fresh}", 0)

    def link_tau(self, y: int, x: int) -> None:
        """Record τ(node y) = node x."""
        old = self.tau.get(y)
        if old is not None and old != x:
            raise InconsistencyError("conflicting translate links")
        self.tau[y] = x

    def _absorb(self, rep: Representation) -> None:
        j = self.find_iso(rep)
        if j is None:
            j = self.find_or_add(rep)
            self.orbit_queue.append(j)
            self.mesh_queue.append(j)

    def _expand_orbit(self, idx: int) -> None:
        """Walk τ in both directions; cheap, and where the guards trip first."""
        node = self.nodes[idx]
        X = node.rep
        nxt = ar_translate_inverse(X)
        if nxt is not None:
            e = self.find_iso(nxt)
            if e is None:
                e = self.add(nxt, node.orbit_root, node.orbit_power + 1)
                self.orbit_queue.append(e)
                self.mesh_queue.append(e)
            self.link_tau(e, idx)
        prev = ar_translate(X)
        if prev is not None:
            p = self.find_iso(prev)
            if p is None:
                p = self.add(prev, node.orbit_root, node.orbit_power - 1)
                self.orbit_queue.append(p)
                self.mesh_queue.append(p)
            self.link_tau(idx, p)

    def _expand_mesh(self, idx: int) -> None:
        """Neighbor closure: rad P, I/soc, or the almost split middle term."""
        node = self.nodes[idx]
        X = node.rep
        if idx not in self.tau:  # projective: predecessors are the rad summands
            rad, _ = radical_submodule(X)
            summands = decompose(rad) if not rad.is_zero() else []
        else:
            summands = decompose(almost_split_middle(X, self.nodes[self.tau[idx]].rep))
        for summand in summands:
            self._absorb(summand)
        if idx not in self.tau_inv_seen:  # injective: successors are the soc-quotient summands
            quo, _ = quotient_representation(X, _socle_spaces(X))
            for summand in decompose(quo) if not quo.is_zero() else []:
                self._absorb(summand)

    def run(self):
        pres = self.pres
        self.orbit_queue = []
        self.mesh_queue = []
        for a in pres.quiver.vertices:
            P = projective(pres, a)
            if self.find_iso(P) is None:
                idx = self.add(P, f"P_{a}", 0)
                self.orbit_queue.append(idx)
                self.mesh_queue.append(idx)
        oi = mi = 0
        while True:
            while oi < len(self.orbit_queue):
                self._expand_orbit(self.orbit_queue[oi])
                oi += 1
            self.tau_inv_seen = set(self.tau.values())
            if mi >= len(self.mesh_queue):
                break
            self._expand_mesh(self.mesh_queue[mi])
            mi += 1
        self._alias()
        return self.nodes, self.tau

    def _alias(self) -> None:
        aliases: Dict[int, list] = {i: [] for i in range(len(self.nodes))}
        for a in self.pres.quiver.vertices:
            for tag, build in (("P", projective), ("I", injective), ("S", simple)):
                rep = build(self.pres, a)
                if rep.is_zero():
                    continue
                idx = self.find_iso(rep)
                if idx is not None:
                    aliases[idx].append(f"{tag}_{a}")
        for i, node in enumerate(self.nodes):
            node.aliases = tuple(aliases[i])


def _socle_spaces(M: Representation) -> Dict[str, Subspace]:
    quiver = M.pres.quiver
    spaces = {}
    for v in quiver.vertices:
        rows = []
        for a in quiver.out_arrows(v):
            rows.extend(list(r) for r in M.matrices[a.name].data)
        if rows:
            spaces[v] = RatMatrix(rows, cols=M.dims[v]).kernel()
        else:
            spaces[v] = Subspace.full(M.dims[v])
    return spaces


def _enumerate_nodes(pres: AlgebraPresentation, limits: EnumerationLimits):
    return _Knitter(pres, limits).run()


def enumerate_indecomposables(pres: AlgebraPresentation,
                              limits: EnumerationLimits | None = None) -> list:
    """All indecomposables, by knitting closure from the projectives."""
    nodes, _ = _enumerate_nodes(pres, limits or EnumerationLimits())
    return [n.rep for n in nodes]


def ar_quiver(pres: AlgebraPresentation,
              limits: EnumerationLimits | None = None) -> ARQuiver:
    nodes, tau = _enumerate_nodes(pres, limits or EnumerationLimits())
    filt = RadicalFiltration(pres, [n.rep for n in nodes])
    ar = ARQuiver(pres, nodes, tau, filt)
    filt.attach_aliases(ar._alias_map)
    return ar
