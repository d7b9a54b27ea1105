"""Exact sparse linear algebra over the rationals.

Everything in this module works with ``fractions.Fraction`` scalars, so
ranks, kernels and subspace operations are exact; no floating point is
accepted anywhere. The two carriers are :class:`SparseRationalMatrix`,
a mapping from ``(row, col)`` to nonzero entries, and :class:`Subspace`,
which stores a canonical reduced-echelon basis so that two subspaces are
equal exactly when their stored bases are equal.

Elimination is fraction free: each row is scaled to integers and reduced
by cross-multiplication against earlier pivot rows, with the content
(gcd) stripped after every combination step so entries stay small. Rows
are processed sparsest first, which keeps fill-in low on the highly
structured matrices this package produces. :func:`rank_modular` runs the
same elimination mod a few word-size primes; it is a cross-check and an
accelerator, never the source of truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Rational = Fraction

_ZERO = Fraction(0)

# Word-size primes for the modular rank cross-check.
DEFAULT_PRIMES = (2147483647, 1000000007, 998244353)

VectorLike = Mapping[int, Rational] | Sequence[Rational]


def _as_rational(value) -> Fraction:
    """Coerce an exact scalar to Fraction; floats are rejected outright."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def _vector_items(vec: VectorLike):
    if isinstance(vec, Mapping):
        return vec.items()
    return enumerate(vec)


@dataclass(frozen=True)
class SparseRationalMatrix:
    """Immutable sparse matrix with Fraction entries.

    ``entries`` maps ``(row, col)`` to a nonzero value; zeros are dropped
    on construction and out-of-range indices are rejected.
    """

    rows: int
    cols: int
    entries: dict[tuple[int, int], Fraction]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        clean: dict[tuple[int, int], Fraction] = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(
                    f"entry ({r}, {c}) outside a {self.rows} x {self.cols} matrix"
                )
            fv = _as_rational(v)
            if fv:
                clean[(r, c)] = fv
        object.__setattr__(self, "entries", clean)

    @classmethod
    def identity(cls, n: int) -> SparseRationalMatrix:
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_rows(cls, dense_rows: Sequence[Sequence]) -> SparseRationalMatrix:
        rows = len(dense_rows)
        cols = len(dense_rows[0]) if dense_rows else 0
        entries = {}
        for r, row in enumerate(dense_rows):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                fv = _as_rational(v)
                if fv:
                    entries[(r, c)] = fv
        return cls(rows, cols, entries)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> SparseRationalMatrix:
        return SparseRationalMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def row_dicts(self) -> dict[int, dict[int, Fraction]]:
        """Nonzero rows as ``{row: {col: value}}``."""
        out: dict[int, dict[int, Fraction]] = {}
        for (r, c), v in self.entries.items():
            out.setdefault(r, {})[c] = v
        return out

    def column_dicts(self) -> dict[int, dict[int, Fraction]]:
        out: dict[int, dict[int, Fraction]] = {}
        for (r, c), v in self.entries.items():
            out.setdefault(c, {})[r] = v
        return out

    def apply(self, vec: VectorLike) -> dict[int, Fraction]:
        """Matrix-vector product, returned as a sparse mapping."""
        dense: dict[int, Fraction] = {}
        for c, v in _vector_items(vec):
            fv = _as_rational(v)
            if fv:
                if not 0 <= c < self.cols:
                    raise ValueError(f"vector coordinate {c} out of range")
                dense[c] = fv
        out: dict[int, Fraction] = {}
        for (r, c), v in self.entries.items():
            xv = dense.get(c)
            if xv:
                cur = out.get(r, _ZERO) + v * xv
                if cur:
                    out[r] = cur
                else:
                    out.pop(r, None)
        return out

    def __matmul__(self, other: SparseRationalMatrix) -> SparseRationalMatrix:
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        other_rows = other.row_dicts()
        acc: dict[tuple[int, int], Fraction] = {}
        for (r, c), v in self.entries.items():
            row = other_rows.get(c)
            if not row:
                continue
            for c2, w in row.items():
                key = (r, c2)
                cur = acc.get(key, _ZERO) + v * w
                if cur:
                    acc[key] = cur
                else:
                    acc.pop(key, None)
        return SparseRationalMatrix(self.rows, other.cols, acc)


def _strip_content(row: dict[int, int]) -> None:
    """Divide an integer row by the gcd of its entries, in place."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for c in row:
            row[c] //= g


def _integer_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    """Scale a rational row to a content-free integer row."""
    den = 1
    for v in row.values():
        d = v.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    if den == 1:
        out = {c: v.numerator for c, v in row.items() if v}
    else:
        out = {}
        for c, v in row.items():
            iv = v.numerator * (den // v.denominator)
            if iv:
                out[c] = iv
    _strip_content(out)
    return out


def _eliminate(row: dict[int, int], pivots: dict[int, dict[int, int]]):
    """Reduce ``row`` against the pivot table.

    Returns ``(lead, row)`` for a surviving row normalized to positive
    leading entry and content 1, or None when the row reduces to zero.
    """
    while row:
        lead = min(row)
        piv = pivots.get(lead)
        if piv is None:
            _strip_content(row)
            if row[lead] < 0:
                for c in row:
                    row[c] = -row[c]
            return lead, row
        a = row.pop(lead)
        b = piv[lead]
        # row := b*row - a*piv; the lead entry cancels by construction.
        if b != 1:
            for c in row:
                row[c] *= b
        for c, pv in piv.items():
            if c == lead:
                continue
            nv = row.get(c, 0) - a * pv
            if nv:
                row[c] = nv
            else:
                row.pop(c, None)
        _strip_content(row)
    return None


def _echelon(rows: Iterable[dict[int, int]]) -> dict[int, dict[int, int]]:
    """Row echelon pivot table ``{leading column: integer row}``."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        res = _eliminate(row, pivots)
        if res is not None:
            pivots[res[0]] = res[1]
    return pivots


def _matrix_pivots(matrix: SparseRationalMatrix) -> dict[int, dict[int, int]]:
    rows = [_integer_row(r) for r in matrix.row_dicts().values()]
    rows.sort(key=len)
    return _echelon(rows)


def rank(matrix: SparseRationalMatrix) -> int:
    """Exact rank over the rationals."""
    return len(_matrix_pivots(matrix))


def rank_modular(
    matrix: SparseRationalMatrix, primes: Sequence[int] = DEFAULT_PRIMES
) -> int:
    """Rank of the matrix mod each prime; the maximum is returned.

    A modular rank never exceeds the rational rank, so this is a certified
    lower bound and, for all but finitely many primes, the exact value.
    Tests cross-check it against :func:`rank` on every instance where both
    run.
    """
    if not primes:
        raise ValueError("at least one prime required")
    int_rows = [_integer_row(r) for r in matrix.row_dicts().values()]
    int_rows.sort(key=len)
    best = 0
    for p in primes:
        if p < 2:
            raise ValueError(f"not a usable modulus: {p}")
        pivots: dict[int, dict[int, int]] = {}
        for base in int_rows:
            row = {}
            for c, v in base.items():
                mv = v % p
                if mv:
                    row[c] = mv
            while row:
                lead = min(row)
                piv = pivots.get(lead)
                if piv is None:
                    inv = pow(row[lead], p - 2, p)
                    pivots[lead] = {c: (v * inv) % p for c, v in row.items()}
                    break
                a = row.pop(lead)
                for c, pv in piv.items():
                    if c == lead:
                        continue
                    nv = (row.get(c, 0) - a * pv) % p
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        best = max(best, len(pivots))
    return best


def kernel_basis(matrix: SparseRationalMatrix) -> Subspace:
    """Canonical basis of the exact null space ``{v : Mv = 0}``."""
    pivots = _matrix_pivots(matrix)
    pivot_cols = sorted(pivots)
    pivot_set = set(pivot_cols)
    vectors: list[dict[int, Fraction]] = []
    for fc in range(matrix.cols):
        if fc in pivot_set:
            continue
        v: dict[int, Fraction] = {fc: Fraction(1)}
        for pc in reversed(pivot_cols):
            if pc > fc:
                # pivot rows have support at columns >= pc > fc, where v
                # vanishes, so the solved coordinate is zero.
                continue
            row = pivots[pc]
            s = _ZERO
            for c, val in row.items():
                if c == pc:
                    continue
                vc = v.get(c)
                if vc:
                    s += val * vc
            if s:
                v[pc] = -s / row[pc]
        vectors.append(v)
    return Subspace.from_spanning(vectors, matrix.cols)


def column_space(matrix: SparseRationalMatrix) -> Subspace:
    """Span of the columns, as a subspace of the row-index space."""
    cols = matrix.column_dicts()
    vectors = [cols[c] for c in sorted(cols)]
    return Subspace.from_spanning(vectors, matrix.rows)


def solve(matrix: SparseRationalMatrix, rhs: VectorLike):
    """Pivot solution of ``M x = b`` with all free variables set to zero.

    Returns ``(x, residual)`` as sparse mappings; the residual ``M x - b``
    is empty exactly when the system is consistent.
    """
    b: dict[int, Fraction] = {}
    for r, v in _vector_items(rhs):
        fv = _as_rational(v)
        if fv:
            if not 0 <= r < matrix.rows:
                raise ValueError(f"rhs coordinate {r} out of range")
            b[r] = fv
    sentinel = matrix.cols
    aug_rows: dict[int, dict[int, Fraction]] = matrix.row_dicts()
    for r, v in b.items():
        aug_rows.setdefault(r, {})[sentinel] = v
    int_rows = [_integer_row(row) for row in aug_rows.values()]
    int_rows.sort(key=len)
    pivots = _echelon(int_rows)
    x: dict[int, Fraction] = {}
    for pc in sorted(pivots, reverse=True):
        if pc == sentinel:
            continue
        row = pivots[pc]
        s = _ZERO
        for c, val in row.items():
            if c == pc:
                continue
            if c == sentinel:
                s -= val
            else:
                xv = x.get(c)
                if xv:
                    s += val * xv
        if s:
            x[pc] = -s / row[pc]
    residual = matrix.apply(x)
    for r, v in b.items():
        cur = residual.get(r, _ZERO) - v
        if cur:
            residual[r] = cur
        else:
            residual.pop(r, None)
    return x, residual


def _check_coords(coords: Iterable[int], ambient_dim: int) -> tuple[int, ...]:
    cs = sorted(set(coords))
    if cs and not (0 <= cs[0] and cs[-1] < ambient_dim):
        raise ValueError("coordinate outside the ambient space")
    return tuple(cs)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace held in canonical reduced-echelon form.

    Basis vectors are sparse mappings; each has leading coordinate 1 at a
    pivot position, pivots strictly increase along the basis, and every
    other basis vector vanishes at each pivot. Build instances through
    :meth:`from_spanning`, which canonicalizes any spanning set; the raw
    constructor validates and should only see already-canonical data.
    """

    ambient_dim: int
    basis: tuple[dict[int, Fraction], ...]

    def __post_init__(self) -> None:
        if self.ambient_dim < 0:
            raise ValueError("ambient dimension must be nonnegative")
        last_pivot = -1
        pivot_rows: list[int] = []
        for vec in self.basis:
            if not vec:
                raise ValueError("zero vector stored in a basis")
            p = min(vec)
            if p <= last_pivot:
                raise ValueError("basis pivots must strictly increase")
            if max(vec) >= self.ambient_dim:
                raise ValueError("basis vector outside the ambient space")
            if vec[p] != 1:
                raise ValueError("basis pivot entries must be 1")
            pivot_rows.append(p)
            last_pivot = p
        pivset = set(pivot_rows)
        for i, vec in enumerate(self.basis):
            for p in pivset:
                if p != pivot_rows[i] and p in vec:
                    raise ValueError("basis is not fully reduced")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @staticmethod
    def from_spanning(vectors: Iterable[VectorLike], ambient_dim: int) -> Subspace:
        """Canonicalize a spanning set by full Gauss-Jordan reduction."""
        reduced: list[tuple[int, dict[int, Fraction]]] = []
        for vec in vectors:
            w: dict[int, Fraction] = {}
            for c, v in _vector_items(vec):
                fv = _as_rational(v)
                if fv:
                    if not 0 <= c < ambient_dim:
                        raise ValueError(f"coordinate {c} out of range")
                    w[c] = fv
            for p, r in reduced:
                cv = w.get(p)
                if cv:
                    for c, rv in r.items():
                        nv = w.get(c, _ZERO) - cv * rv
                        if nv:
                            w[c] = nv
                        else:
                            w.pop(c, None)
            if not w:
                continue
            p = min(w)
            pv = w[p]
            if pv != 1:
                w = {c: v / pv for c, v in w.items()}
            for _, r in reduced:
                cv = r.get(p)
                if cv:
                    for c, wv in w.items():
                        nv = r.get(c, _ZERO) - cv * wv
                        if nv:
                            r[c] = nv
                        else:
                            r.pop(c, None)
            reduced.append((p, w))
        reduced.sort(key=lambda item: item[0])
        return Subspace(ambient_dim, tuple(r for _, r in reduced))

    @staticmethod
    def full(ambient_dim: int) -> Subspace:
        return Subspace(
            ambient_dim, tuple({i: Fraction(1)} for i in range(ambient_dim))
        )

    def contains(self, vec: VectorLike) -> bool:
        w: dict[int, Fraction] = {}
        for c, v in _vector_items(vec):
            fv = _as_rational(v)
            if fv:
                if not 0 <= c < self.ambient_dim:
                    raise ValueError(f"coordinate {c} out of range")
                w[c] = fv
        for b in self.basis:
            p = min(b)
            cv = w.get(p)
            if cv:
                for c, rv in b.items():
                    nv = w.get(c, _ZERO) - cv * rv
                    if nv:
                        w[c] = nv
                    else:
                        w.pop(c, None)
        return not w


def project(space: Subspace, coords: Iterable[int]) -> Subspace:
    """Image of the subspace under restriction to the chosen coordinates.

    The result lives in an ambient of dimension ``len(coords)``, indexed
    by the coordinates in increasing original order.
    """
    cs = _check_coords(coords, space.ambient_dim)
    pos = {c: i for i, c in enumerate(cs)}
    vectors = []
    for b in space.basis:
        v = {pos[c]: val for c, val in b.items() if c in pos}
        vectors.append(v)
    return Subspace.from_spanning(vectors, len(cs))


def restrict_to_coords(space: Subspace, coords: Iterable[int]) -> Subspace:
    """Subspace of vectors supported entirely on the chosen coordinates.

    Unlike :func:`project` this returns vectors in the full ambient
    space; its dimension never exceeds the projection's.
    """
    cs = set(_check_coords(coords, space.ambient_dim))
    k = space.dim
    constraint: dict[int, dict[int, Fraction]] = {}
    for i, b in enumerate(space.basis):
        for c, v in b.items():
            if c not in cs:
                constraint.setdefault(c, {})[i] = v
    rows = {}
    for r, (_, row) in enumerate(sorted(constraint.items())):
        for i, v in row.items():
            rows[(r, i)] = v
    combos = kernel_basis(SparseRationalMatrix(len(constraint), k, rows))
    vectors = []
    for y in combos.basis:
        v: dict[int, Fraction] = {}
        for i, coeff in y.items():
            for c, val in space.basis[i].items():
                cur = v.get(c, _ZERO) + coeff * val
                if cur:
                    v[c] = cur
                else:
                    v.pop(c, None)
        vectors.append(v)
    return Subspace.from_spanning(vectors, space.ambient_dim)


def embed(space: Subspace, coords: Sequence[int], ambient_dim: int) -> Subspace:
    """Inverse of the reindexing done by :func:`project`.

    ``coords[i]`` names the ambient coordinate that local coordinate ``i``
    maps to; the list must be strictly increasing so the canonical form is
    preserved.
    """
    if len(coords) != space.ambient_dim:
        raise ValueError("coordinate list does not match the local ambient")
    if any(coords[i] >= coords[i + 1] for i in range(len(coords) - 1)):
        raise ValueError("coordinates must strictly increase")
    if coords and not (0 <= coords[0] and coords[-1] < ambient_dim):
        raise ValueError("coordinate outside the target ambient space")
    basis = tuple({coords[c]: v for c, v in b.items()} for b in space.basis)
    return Subspace(ambient_dim, basis)


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    return a.basis == b.basis


def subspace_sum_dim(a: Subspace, b: Subspace) -> int:
    """Dimension of the (not necessarily direct) sum of two subspaces."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    rows = [_integer_row(v) for v in a.basis + b.basis]
    rows.sort(key=len)
    return len(_echelon(rows))
