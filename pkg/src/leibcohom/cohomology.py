"""Cocycle, coboundary and cohomology dimensions, graded and by block.

The totals ZL^n = ker d^n, BL^n = im d^{n-1} and HL^n = ZL^n / BL^n are
computed from the coboundary matrices by exact elimination. For a graded
algebra acting on itself, :class:`AdjointCohomology` additionally splits
everything by cochain degree and by argument-signature block, caching the
matrices and kernels so a verification run never rebuilds them. The
module-level functions are thin pure wrappers around a fresh instance.

Blocks are named by G/I tags, where G is the degree-0 part of the algebra
and I the degree-1 part; a tag pair such as ("I", "G") selects the
cochains with first argument in I, second in G, and target in whichever
part the cochain degree forces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (
    AlgebraStructure,
    Bimodule,
    Grading,
    adjoint_bimodule,
    check_bimodule_axioms,
    check_grading,
)
from .cochain import (
    cochain_degrees,
    coboundary_matrix,
    graded_columns,
    graded_submatrix,
)
from .linalg import (
    SparseRationalMatrix,
    Subspace,
    column_space,
    kernel_basis,
    project,
    rank,
    restrict_to_coords,
    subspace_equal,
)

_TAG_DEGREE = {"G": 0, "I": 1}
_DEGREE_TAG = {0: "G", 1: "I"}

BlockSpec = Sequence[str] | Iterable[Sequence[str]]


def zl_dim(algebra: AlgebraStructure, module: Bimodule, n: int) -> int:
    """dim ZL^n(L, M) = dim ker d^n, supported for n in 0..3."""
    d = coboundary_matrix(algebra, module, n)
    return d.cols - rank(d)


def bl_dim(algebra: AlgebraStructure, module: Bimodule, n: int) -> int:
    """dim BL^n(L, M) = rank d^{n-1}, supported for n in 1..2."""
    if n not in (1, 2):
        raise ValueError("coboundary dimensions are supported for n in {1, 2}")
    return rank(coboundary_matrix(algebra, module, n - 1))


def hl_dim(algebra: AlgebraStructure, module: Bimodule, n: int) -> int:
    """dim HL^n(L, M), supported for n in 1..2."""
    if n not in (1, 2):
        raise ValueError("cohomology dimensions are supported for n in {1, 2}")
    return zl_dim(algebra, module, n) - bl_dim(algebra, module, n)


@dataclass(frozen=True)
class CohomologyReport:
    """Total and per-degree dimensions of ZL^n, BL^n and HL^n."""

    arity: int
    dim_z: int
    dim_b: int
    dim_h: int
    per_degree: dict[int, tuple[int, int, int]]

    def __post_init__(self) -> None:
        if self.dim_h != self.dim_z - self.dim_b or self.dim_h < 0:
            raise ValueError("inconsistent cohomology dimensions")
        for degree, (z, b, h) in self.per_degree.items():
            if h != z - b or h < 0:
                raise ValueError(f"inconsistent dimensions in degree {degree}")

    def to_dict(self) -> dict:
        return {
            "n": self.arity,
            "dim_z": self.dim_z,
            "dim_b": self.dim_b,
            "dim_h": self.dim_h,
            "per_degree": {
                str(i): {"dim_z": z, "dim_b": b, "dim_h": h}
                for i, (z, b, h) in sorted(self.per_degree.items())
            },
        }


@dataclass(frozen=True)
class BlockAnalysis:
    """How the degree-``degree`` cocycles meet one signature block.

    ``projection_dim`` is the dimension of the image of the cocycle space
    under restriction of coordinates to the block; ``supported_dim``
    counts the cocycles living entirely inside the block; the projection
    is injective when no nonzero cocycle vanishes on the block.
    """

    degree: int
    blocks: tuple[tuple[str, str], ...]
    projection_dim: int
    supported_dim: int
    projection_injective: bool

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "blocks": ["*".join(pair) for pair in self.blocks],
            "projection_dim": self.projection_dim,
            "supported_dim": self.supported_dim,
            "projection_injective": self.projection_injective,
        }


class AdjointCohomology:
    """Graded cocycle analysis of CL^*(L, L) for one graded algebra.

    Construction validates the grading. All coboundary matrices, ranks,
    graded blocks and kernel bases are computed once and cached on the
    instance, which keeps repeated block queries cheap.
    """

    def __init__(self, algebra: AlgebraStructure, grading: Grading):
        if not check_grading(algebra, grading):
            raise ValueError("the grading does not respect the multiplication")
        self.algebra = algebra
        self.grading = grading
        self.module = adjoint_bimodule(algebra)
        self._cob: dict[int, SparseRationalMatrix] = {}
        self._rank: dict[int, int] = {}
        self._cols: dict[tuple[int, int], tuple[int, ...]] = {}
        self._sub: dict[tuple[int, int], SparseRationalMatrix] = {}
        self._sub_rank: dict[tuple[int, int], int] = {}
        self._zl_basis: dict[int, Subspace] = {}

    # matrices and totals

    def coboundary(self, n: int) -> SparseRationalMatrix:
        if n not in self._cob:
            self._cob[n] = coboundary_matrix(self.algebra, self.module, n)
        return self._cob[n]

    def _cob_rank(self, n: int) -> int:
        if n not in self._rank:
            self._rank[n] = rank(self.coboundary(n))
        return self._rank[n]

    def zl_dim(self, n: int) -> int:
        d = self.coboundary(n)
        return d.cols - self._cob_rank(n)

    def bl_dim(self, n: int) -> int:
        if n not in (1, 2):
            raise ValueError("coboundary dimensions are supported for n in {1, 2}")
        return self._cob_rank(n - 1)

    def hl_dim(self, n: int) -> int:
        return self.zl_dim(n) - self.bl_dim(n)

    # graded pieces

    def degrees(self, n: int) -> tuple[int, ...]:
        return cochain_degrees(self.algebra, self.grading, self.grading.degrees, n)

    def graded_cols(self, n: int, degree: int) -> tuple[int, ...]:
        key = (n, degree)
        if key not in self._cols:
            self._cols[key] = graded_columns(
                self.algebra, self.grading, self.grading.degrees, n, degree
            )
        return self._cols[key]

    def graded_sub(self, n: int, degree: int) -> SparseRationalMatrix:
        key = (n, degree)
        if key not in self._sub:
            self._sub[key] = graded_submatrix(
                self.coboundary(n),
                self.algebra,
                self.grading,
                self.grading.degrees,
                n,
                degree,
            )
        return self._sub[key]

    def _graded_rank(self, n: int, degree: int) -> int:
        key = (n, degree)
        if key not in self._sub_rank:
            self._sub_rank[key] = rank(self.graded_sub(n, degree))
        return self._sub_rank[key]

    def graded_zl_dim(self, n: int, degree: int) -> int:
        return self.graded_sub(n, degree).cols - self._graded_rank(n, degree)

    def graded_bl_dim(self, n: int, degree: int) -> int:
        return self._graded_rank(n - 1, degree)

    def zl_graded_basis(self, degree: int) -> Subspace:
        """Kernel of the degree block of d^2, in block-local coordinates."""
        if degree not in self._zl_basis:
            self._zl_basis[degree] = kernel_basis(self.graded_sub(2, degree))
        return self._zl_basis[degree]

    def report(self, n: int) -> CohomologyReport:
        """Totals plus the per-degree split, cross-checked against each
        other: the graded dimensions must sum to the ungraded ones."""
        if n not in (1, 2):
            raise ValueError("reports are supported for n in {1, 2}")
        per: dict[int, tuple[int, int, int]] = {}
        for i in self.degrees(n):
            z = self.graded_zl_dim(n, i)
            b = self.graded_bl_dim(n, i)
            per[i] = (z, b, z - b)
        total_z = self.zl_dim(n)
        total_b = self.bl_dim(n)
        if sum(z for z, _, _ in per.values()) != total_z:
            raise AssertionError("graded cocycle dimensions do not sum to the total")
        if sum(b for _, b, _ in per.values()) != total_b:
            raise AssertionError("graded coboundary dimensions do not sum to the total")
        return CohomologyReport(n, total_z, total_b, total_z - total_b, per)

    # G/I blocks

    def _classes(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        classes = self.grading.classes()
        if not set(classes) <= {0, 1}:
            raise ValueError("block analysis needs a grading with degrees in {0, 1}")
        return classes.get(0, ()), classes.get(1, ())

    def _normalize_block(self, block: BlockSpec) -> tuple[tuple[str, str], ...]:
        pairs = list(block)
        if pairs and isinstance(pairs[0], str):
            pairs = [tuple(pairs)]
        out = []
        for pair in pairs:
            pair = tuple(pair)
            if len(pair) != 2 or any(tag not in _TAG_DEGREE for tag in pair):
                raise ValueError(f"not a G/I tag pair: {pair!r}")
            out.append(pair)
        if not out:
            raise ValueError("no tag pairs given")
        return tuple(out)

    def block_local_coords(self, degree: int, pairs: Sequence[tuple[str, str]]) -> tuple[int, ...]:
        """Positions of the blocks' columns inside the degree component."""
        g_idx, i_idx = self._classes()
        by_tag = {"G": g_idx, "I": i_idx}
        dl = self.algebra.dim
        dm = dl
        degs = self.grading.degrees
        cols = self.graded_cols(2, degree)
        col_pos = {c: p for p, c in enumerate(cols)}
        out: set[int] = set()
        for ta, tb in pairs:
            target_deg = degree + _TAG_DEGREE[ta] + _TAG_DEGREE[tb]
            targets = [k for k in range(dm) if degs[k] == target_deg]
            if not targets:
                raise ValueError(
                    f"block {ta}*{tb} has no target component in degree {degree}"
                )
            for a in by_tag[ta]:
                for b in by_tag[tb]:
                    base = (a * dl + b) * dm
                    for k in targets:
                        out.add(col_pos[base + k])
        return tuple(sorted(out))

    def block_analysis(self, degree: int, block: BlockSpec) -> BlockAnalysis:
        pairs = self._normalize_block(block)
        coords = self.block_local_coords(degree, pairs)
        space = self.zl_graded_basis(degree)
        proj = project(space, coords)
        supported = restrict_to_coords(space, coords)
        if not supported.dim <= proj.dim <= space.dim:
            raise AssertionError("block dimensions violate the projection bounds")
        return BlockAnalysis(
            degree=degree,
            blocks=pairs,
            projection_dim=proj.dim,
            supported_dim=supported.dim,
            projection_injective=proj.dim == space.dim,
        )

    def degree_zero_part(self) -> AlgebraStructure:
        """The degree-0 block as an algebra on its own basis."""
        g_idx, _ = self._classes()
        pos = {g: p for p, g in enumerate(g_idx)}
        tensor: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), vec in self.algebra.tensor.items():
            if i in pos and j in pos:
                tensor[(pos[i], pos[j])] = {pos[t]: c for t, c in vec.items()}
        labels = tuple(self.algebra.basis_labels[g] for g in g_idx)
        return AlgebraStructure(len(g_idx), labels, tensor)

    def gg_block_is_lie_coboundary(self) -> bool:
        """Degree-0 cocycles restricted to G*G: skew, and exactly the
        2-coboundaries of the degree-0 subalgebra acting on itself.

        The comparison space is the image of t -> [t(x), y] + [x, t(y)]
        - t([x, y]) over all linear maps t on the degree-0 part.
        """
        g_idx, _ = self._classes()
        ng = len(g_idx)
        coords = self.block_local_coords(0, (("G", "G"),))
        projected = project(self.zl_graded_basis(0), coords)
        # coordinate p inside the block decodes as ((a, b), c) over the
        # degree-0 basis in index order
        for vec in projected.basis:
            for p, v in vec.items():
                rest, c = divmod(p, ng)
                a, b = divmod(rest, ng)
                swapped = (b * ng + a) * ng + c
                if vec.get(swapped, Fraction(0)) != -v:
                    return False
        sub = self.degree_zero_part()
        d1 = coboundary_matrix(sub, adjoint_bimodule(sub), 1)
        return subspace_equal(projected, column_space(d1))


def graded_cohomology(
    algebra: AlgebraStructure, grading: Grading, n: int
) -> CohomologyReport:
    return AdjointCohomology(algebra, grading).report(n)


def block_analysis(
    algebra: AlgebraStructure, grading: Grading, degree: int, block: BlockSpec
) -> BlockAnalysis:
    return AdjointCohomology(algebra, grading).block_analysis(degree, block)


def gg_block_is_lie_coboundary(algebra: AlgebraStructure, grading: Grading) -> bool:
    return AdjointCohomology(algebra, grading).gg_block_is_lie_coboundary()


# Chevalley-Eilenberg cohomology for Lie algebras, via the right action.


def _require_lie(algebra: AlgebraStructure) -> None:
    from .catalog import lie_as_leibniz

    lie_as_leibniz(algebra)


def _require_right_module(algebra: AlgebraStructure, module: Bimodule) -> None:
    zero: tuple[dict, ...] = tuple({} for _ in range(algebra.dim))
    probe = Bimodule(module.algebra_dim, module.module_dim, zero, module.right_action)
    bad = check_bimodule_axioms(algebra, probe)
    if bad:
        raise ValueError(
            f"right action is not a Lie module action ({len(bad)} defects)"
        )


def lie_ce_h(algebra: AlgebraStructure, module: Bimodule, n: int) -> int:
    """dim H^n of the Chevalley-Eilenberg complex, n in {1, 2}.

    The algebra must be Lie (antisymmetric bracket, Jacobi identity) and
    only the right action of the bimodule is used, through the induced
    left action x.m = -[m, x]. Cochains are alternating, with basis
    indexed by increasing argument tuples.
    """
    if n not in (1, 2):
        raise ValueError("Chevalley-Eilenberg dimensions are supported for n in {1, 2}")
    if module.algebra_dim != algebra.dim:
        raise ValueError("module is over an algebra of different dimension")
    _require_lie(algebra)
    _require_right_module(algebra, module)
    g = algebra.dim
    dm = module.module_dim
    rho = tuple(
        {key: -v for key, v in act.items()} for act in module.right_action
    )

    def build(entries):
        def add(r, c, v):
            key = (r, c)
            cur = entries.get(key, Fraction(0)) + v
            if cur:
                entries[key] = cur
            else:
                entries.pop(key, None)

        return add

    pairs = list(itertools.combinations(range(g), 2))
    pair_pos = {pq: i for i, pq in enumerate(pairs)}

    # d0: M -> Hom(G, M)
    e0: dict[tuple[int, int], Fraction] = {}
    add0 = build(e0)
    for p in range(g):
        for (out, inp), v in rho[p].items():
            add0(p * dm + out, inp, v)
    d0 = SparseRationalMatrix(g * dm, dm, e0)

    # d1: Hom(G, M) -> Hom(/\2 G, M)
    e1: dict[tuple[int, int], Fraction] = {}
    add1 = build(e1)
    for p, q in pairs:
        row_base = pair_pos[(p, q)] * dm
        for (out, inp), v in rho[p].items():
            add1(row_base + out, q * dm + inp, v)
        for (out, inp), v in rho[q].items():
            add1(row_base + out, p * dm + inp, -v)
        for t, c in algebra.product(p, q).items():
            for k in range(dm):
                add1(row_base + k, t * dm + k, -c)
    d1 = SparseRationalMatrix(len(pairs) * dm, g * dm, e1)

    if n == 1:
        ker = g * dm - rank(d1)
        return ker - rank(d0)

    # d2: Hom(/\2 G, M) -> Hom(/\3 G, M)
    triples = list(itertools.combinations(range(g), 3))
    e2: dict[tuple[int, int], Fraction] = {}
    add2 = build(e2)

    def alternating(t: int, partner: int):
        if t == partner:
            return None
        if t < partner:
            return pair_pos[(t, partner)], 1
        return pair_pos[(partner, t)], -1

    for tri_pos, (p, q, r) in enumerate(triples):
        row_base = tri_pos * dm
        for x, pq, sign in ((p, (q, r), 1), (q, (p, r), -1), (r, (p, q), 1)):
            col_base = pair_pos[pq] * dm
            for (out, inp), v in rho[x].items():
                add2(row_base + out, col_base + inp, sign * v)
        for (a, b), partner, sign in (
            ((p, q), r, -1),
            ((p, r), q, 1),
            ((q, r), p, -1),
        ):
            for t, c in algebra.product(a, b).items():
                hit = alternating(t, partner)
                if hit is None:
                    continue
                col, orient = hit
                coeff = sign * orient * c
                for k in range(dm):
                    add2(row_base + k, col * dm + k, coeff)
    d2 = SparseRationalMatrix(len(triples) * dm, len(pairs) * dm, e2)
    ker = len(pairs) * dm - rank(d2)
    return ker - rank(d1)


def leibniz_h_with_coefficients(
    algebra: AlgebraStructure, module: Bimodule, n: int
) -> int:
    """dim HL^n(G, M) for a Lie algebra G and a Leibniz bimodule M.

    The bimodule axioms are enforced first, so results are only produced
    for coefficient systems where the complex actually squares to zero.
    """
    if n not in (1, 2):
        raise ValueError("cohomology dimensions are supported for n in {1, 2}")
    _require_lie(algebra)
    bad = check_bimodule_axioms(algebra, module)
    if bad:
        raise ValueError(f"not a Leibniz bimodule ({len(bad)} axiom defects)")
    return hl_dim(algebra, module, n)
