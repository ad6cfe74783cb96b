"""Exact dense linear algebra over the rationals.

Everything downstream (Hom spaces, radical layers, translates) reduces to
rank/kernel/membership questions here, so arithmetic never rounds: entries
are Python ints or ``fractions.Fraction``.  Elimination clears denominators
and works on arbitrary-precision integers; canonical bases make subspace
equality a plain data comparison.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import ShapeError


def _norm(x):
    """Coerce an entry to int (when integral) or Fraction."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, (int, str)):
        f = Fraction(x)
        return int(f) if f.denominator == 1 else f
    raise TypeError(f"not a rational entry: {x!r}")


def _row_lcm_den(row) -> int:
    d = 1
    for x in row:
        if not type(x) is int:
            d = d * x.denominator // gcd(d, x.denominator)
    return d


def _int_row(row) -> list:
    """Scale a rational row to a primitive integer row (keeps direction)."""
    d = _row_lcm_den(row)
    out = [int(x * d) if not type(x) is int else x * d for x in row]
    g = 0
    for v in out:
        g = gcd(g, v)
    if g > 1:
        out = [v // g for v in out]
    return out


def _normalize_int_row(row) -> None:
    """In place: divide by content, make the first nonzero entry positive."""
    g = 0
    for v in row:
        g = gcd(g, v)
    if g == 0:
        return
    lead = next(v for v in row if v)
    if lead < 0:
        g = -g
    if g != 1:
        for i, v in enumerate(row):
            row[i] = v // g


def _echelon_int(rows: list, ncols: int, reduced: bool = True):
    """Integer Gauss-Jordan: returns (rows, pivot columns), rows primitive.

    Pivoting is deterministic (first nonzero in column order), so the reduced
    form is canonical for a given row space.
    """
    work = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(work)):
            if work[i][c]:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        _normalize_int_row(work[r])
        piv = work[r][c]
        targets = range(len(work)) if reduced else range(r + 1, len(work))
        for i in targets:
            if i == r:
                continue
            v = work[i][c]
            if v:
                g = gcd(piv, v)
                a, b = piv // g, v // g
                ri, rr = work[i], work[r]
                work[i] = [a * x - b * y for x, y in zip(ri, rr)]
                _normalize_int_row(work[i])
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    work = [w for w in work if any(w)]
    return work, pivots


def _kernel_int(rows: list, ncols: int) -> list:
    """Primitive integer basis of {x : rows·x = 0}, ordered by free column."""
    rref, pivots = _echelon_int(rows, ncols, reduced=True)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = Fraction(-rref[i][free], rref[i][p])
        basis.append(_int_row(vec))
    return basis


class RatMatrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Sequence], cols: int | None = None):
        d = tuple(tuple(_norm(x) for x in row) for row in data)
        if d:
            cols = len(d[0]) if cols is None else cols
            if any(len(r) != cols for r in d):
                raise ShapeError("ragged rows")
        elif cols is None:
            cols = 0
        object.__setattr__(self, "data", d)
        object.__setattr__(self, "rows", len(d))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, *a):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def column(cls, entries: Sequence) -> "RatMatrix":
        return cls([[e] for e in entries], cols=1)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "RatMatrix":
        if self.rows == 0:
            return RatMatrix([() for _ in range(self.cols)], cols=0)
        return RatMatrix(zip(*self.data), cols=self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, RatMatrix)
            and self.shape == other.shape
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"add {self.shape} vs {other.shape}")
        return RatMatrix(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.data, other.data)],
            cols=self.cols,
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-x for x in r] for r in self.data], cols=self.cols)

    def scaled(self, c) -> "RatMatrix":
        c = _norm(c)
        return RatMatrix([[c * x for x in r] for r in self.data], cols=self.cols)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"matmul {self.shape} @ {other.shape}")
        if self.rows == 0 or other.cols == 0:
            return RatMatrix([() for _ in range(self.rows)], cols=other.cols)
        ot = list(zip(*other.data)) if other.data else []
        out = []
        for row in self.data:
            if ot:
                out.append([sum(a * b for a, b in zip(row, col)) for col in ot])
            else:
                out.append([0] * other.cols)
        return RatMatrix(out, cols=other.cols)

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise ShapeError("apply: length mismatch")
        return [sum(a * b for a, b in zip(row, vec)) for row in self.data]

    def rref(self):
        """Canonical reduced echelon form over the integers: (matrix, pivots)."""
        rows = [_int_row(r) for r in self.data]
        red, piv = _echelon_int(rows, self.cols, reduced=True)
        return RatMatrix(red, cols=self.cols), tuple(piv)

    def rank(self) -> int:
        rows = [_int_row(r) for r in self.data]
        _, piv = _echelon_int(rows, self.cols, reduced=False)
        return len(piv)

    def det(self):
        if not self.is_square():
            raise ShapeError("det of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        work = [[Fraction(x) for x in row] for row in self.data]
        sign = 1
        det = Fraction(1)
        for c in range(n):
            pr = next((i for i in range(c, n) if work[i][c]), None)
            if pr is None:
                return 0
            if pr != c:
                work[c], work[pr] = work[pr], work[c]
                sign = -sign
            piv = work[c][c]
            det *= piv
            for i in range(c + 1, n):
                f = work[i][c] / piv
                if f:
                    work[i] = [x - f * y for x, y in zip(work[i], work[c])]
        return _norm(det * sign)

    def kernel(self) -> "Subspace":
        """Right kernel {x : Ax = 0} as a subspace of k^cols."""
        rows = [_int_row(r) for r in self.data]
        return Subspace._from_int_vectors(self.cols, _kernel_int(rows, self.cols))

    def image(self) -> "Subspace":
        """Column space as a subspace of k^rows."""
        cols = list(zip(*self.data)) if self.data else []
        return Subspace.from_vectors(self.rows, cols)

    def row_space(self) -> "Subspace":
        return Subspace.from_vectors(self.cols, self.data)

    def solve(self, rhs: Sequence):
        """One exact solution of Ax = rhs, or None when inconsistent."""
        if len(rhs) != self.rows:
            raise ShapeError("solve: rhs length mismatch")
        n = self.cols
        aug = [list(row) + [_norm(b)] for row, b in zip(self.data, rhs)]
        aug = [_int_row(r) for r in aug]
        red, piv = _echelon_int(aug, n + 1, reduced=True)
        if n in piv:
            return None
        sol = [Fraction(0)] * n
        for i, p in enumerate(piv):
            sol[p] = Fraction(red[i][n], red[i][p])
        return tuple(_norm(x) for x in sol)

    def inverse(self) -> "RatMatrix":
        if not self.is_square():
            raise ShapeError("inverse of non-square matrix")
        n = self.rows
        aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.data)]
        aug = [_int_row(r) for r in aug]
        red, piv = _echelon_int(aug, 2 * n, reduced=True)
        if list(piv[:n]) != list(range(n)) or len(piv) != n:
            raise ShapeError("matrix is singular")
        inv = []
        for i in range(n):
            p = red[i][i]
            inv.append([Fraction(x, p) for x in red[i][n:]])
        return RatMatrix(inv, cols=n)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def __repr__(self):
        return f"RatMatrix({[list(r) for r in self.data]!r})"


def hstack(mats: Sequence[RatMatrix]) -> RatMatrix:
    mats = list(mats)
    if not mats:
        raise ShapeError("hstack of nothing")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ShapeError("hstack: row mismatch")
    data = [sum((list(m.data[i]) for m in mats), []) for i in range(rows)]
    return RatMatrix(data, cols=sum(m.cols for m in mats))


def vstack(mats: Sequence[RatMatrix]) -> RatMatrix:
    mats = list(mats)
    if not mats:
        raise ShapeError("vstack of nothing")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ShapeError("vstack: column mismatch")
    data = [row for m in mats for row in m.data]
    return RatMatrix(data, cols=cols)


class Subspace:
    """Subspace of k^ambient in canonical form.

    The basis is the unique reduced echelon form with primitive integer rows
    and positive pivots, so two computations of the same space produce equal
    objects componentwise.
    """

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, basis, pivots):
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, *a):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def _from_int_vectors(cls, ambient: int, vectors) -> "Subspace":
        red, piv = _echelon_int(vectors, ambient, reduced=True)
        return cls(ambient, tuple(tuple(r) for r in red), tuple(piv))

    @classmethod
    def from_vectors(cls, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        ints = [_int_row([_norm(x) for x in v]) for v in vectors]
        for v in ints:
            if len(v) != ambient:
                raise ShapeError("vector length != ambient")
        return cls._from_int_vectors(ambient, ints)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, (), ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        rows = tuple(tuple(1 if i == j else 0 for j in range(ambient)) for i in range(ambient))
        return cls(ambient, rows, tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def coords(self, vec: Sequence):
        """Coefficients of vec over the canonical basis, or None if outside."""
        v = [_norm(x) for x in vec]
        if len(v) != self.ambient:
            raise ShapeError("coords: length mismatch")
        cs = []
        for row, p in zip(self.basis, self.pivots):
            c = Fraction(v[p], row[p]) if v[p] else Fraction(0)
            cs.append(c)
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        if any(v):
            return None
        return tuple(_norm(c) for c in cs)

    def contains_vector(self, vec: Sequence) -> bool:
        return self.coords(vec) is not None

    def contains(self, other: "Subspace") -> bool:
        if self.ambient != other.ambient:
            raise ShapeError("ambient mismatch")
        return all(self.contains_vector(row) for row in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ShapeError("ambient mismatch")
        return Subspace._from_int_vectors(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: echelonize [A|A; B|0]; rows with zero left half give A∩B."""
        if self.ambient != other.ambient:
            raise ShapeError("ambient mismatch")
        n = self.ambient
        block = [list(r) + list(r) for r in self.basis]
        block += [list(r) + [0] * n for r in other.basis]
        red, _ = _echelon_int(block, 2 * n, reduced=False)
        inter = [row[n:] for row in red if not any(row[:n])]
        return Subspace._from_int_vectors(n, inter)

    def basis_vectors(self):
        return self.basis

    def nonpivots(self) -> tuple:
        pset = set(self.pivots)
        return tuple(c for c in range(self.ambient) if c not in pset)

    def quotient_coords(self, vec: Sequence) -> tuple:
        """Coordinates of vec in k^ambient modulo this subspace.

        The quotient basis is the image of the unit vectors at non-pivot
        positions, so these coordinates are the residue after elimination.
        """
        v = [_norm(x) for x in vec]
        if len(v) != self.ambient:
            raise ShapeError("quotient_coords: length mismatch")
        for row, p in zip(self.basis, self.pivots):
            if v[p]:
                c = Fraction(v[p], row[p])
                v = [x - c * y for x, y in zip(v, row)]
        return tuple(_norm(v[c]) for c in self.nonpivots())

    def __repr__(self):
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"


def algebra_radical(mult_table: Sequence[Sequence[Sequence]]) -> Subspace:
    """Jacobson radical of a finite-dimensional associative algebra over Q.

    ``mult_table[i][j]`` holds the coordinates of e_i·e_j over the basis.
    In characteristic zero the radical is the kernel of the trace form
    (x, y) -> trace(L_x L_y); the result lives in the algebra's coordinate
    space.  Raises ValueError if the table is not associative.
    """
    n = len(mult_table)
    table = [[[_norm(c) for c in mult_table[i][j]] for j in range(n)] for i in range(n)]
    for i in range(n):
        if len(table[i]) != n or any(len(table[i][j]) != n for j in range(n)):
            raise ShapeError("mult_table must be n x n x n")
    # left-multiplication matrices: (L_i)[k][j] = coefficient of e_k in e_i e_j
    L = [RatMatrix([[table[i][j][k] for j in range(n)] for k in range(n)], cols=n) for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = L[i] @ L[j]
            rhs_rows = [[0] * n for _ in range(n)]
            for m in range(n):
                c = table[i][j][m]
                if c:
                    for k in range(n):
                        for col in range(n):
                            rhs_rows[k][col] += c * table[m][col][k]
            if lhs != RatMatrix(rhs_rows, cols=n):
                raise ValueError("multiplication table is not associative")
    gram = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = L[i] @ L[j]
            row.append(sum(prod.data[k][k] for k in range(n)))
        gram.append(row)
    return RatMatrix(gram, cols=n).kernel()


def minimal_polynomial(mat: RatMatrix) -> tuple:
    """Monic minimal polynomial of a square matrix, coefficients low to high."""
    if not mat.is_square():
        raise ShapeError("minimal polynomial of non-square matrix")
    n = mat.rows
    if n == 0:
        return (0, 1)  # convention: t
    power = RatMatrix.identity(n)
    flats = []
    k = 0
    while True:
        flat = [x for row in power.data for x in row]
        sys = RatMatrix(zip(*flats), cols=len(flats)) if flats else RatMatrix([[] for _ in range(n * n)], cols=0)
        sol = sys.solve(flat)
        if sol is not None:
            coeffs = [-c for c in sol] + [1]
            return tuple(_norm(c) for c in coeffs)
        flats.append(flat)
        power = power @ mat
        k += 1
        if k > n + 1:
            raise RuntimeError("minimal polynomial search exceeded dimension bound")
