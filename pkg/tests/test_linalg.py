"""Exact sparse linear algebra: frozen examples plus randomized identities."""

import random
from fractions import Fraction

import pytest

from leibcohom.linalg import (
    SparseRationalMatrix,
    Subspace,
    column_space,
    embed,
    kernel_basis,
    project,
    rank,
    rank_modular,
    restrict_to_coords,
    solve,
    subspace_equal,
    subspace_sum_dim,
)

F = Fraction


def mat(rows, cols, entries):
    return SparseRationalMatrix(rows, cols, {k: F(v) for k, v in entries.items()})


def random_matrix(rng, rows, cols, density=0.4, span=9):
    entries = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                v = rng.randint(-span, span)
                if v:
                    entries[(r, c)] = F(v)
    return SparseRationalMatrix(rows, cols, entries)


class TestMatrixBasics:
    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            SparseRationalMatrix(1, 1, {(0, 0): 0.5})

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            mat(2, 2, {(2, 0): 1})

    def test_drops_zero_entries(self):
        m = mat(2, 2, {(0, 0): 1, (1, 1): 0})
        assert m.nnz == 1

    def test_identity_and_matmul(self):
        ident = SparseRationalMatrix.identity(3)
        m = mat(3, 3, {(0, 1): 2, (2, 0): -3})
        assert (ident @ m).entries == m.entries
        assert (m @ ident).entries == m.entries

    def test_apply(self):
        m = mat(2, 3, {(0, 0): 1, (0, 2): 2, (1, 1): -1})
        out = m.apply({0: F(3), 2: F(1)})
        assert out == {0: F(5)}

    def test_transpose_involution(self):
        m = mat(3, 2, {(0, 1): 5, (2, 0): 7})
        assert m.transpose().transpose().entries == m.entries


class TestRankAndKernel:
    def test_rank_dependent_rows(self):
        m = mat(2, 2, {(0, 0): 1, (0, 1): 2, (1, 0): 2, (1, 1): 4})
        assert rank(m) == 1

    def test_rank_zero_matrix(self):
        assert rank(SparseRationalMatrix(3, 4, {})) == 0
        assert kernel_basis(SparseRationalMatrix(3, 4, {})).dim == 4

    def test_kernel_annihilates(self):
        m = mat(2, 3, {(0, 0): 1, (0, 1): 2, (1, 2): 1})
        ker = kernel_basis(m)
        assert ker.dim == 1
        for vec in ker.basis:
            assert m.apply(dict(vec)) == {}

    def test_rank_nullity_random(self):
        rng = random.Random(20260817)
        for _ in range(25):
            rows = rng.randint(1, 8)
            cols = rng.randint(1, 8)
            m = random_matrix(rng, rows, cols)
            r = rank(m)
            ker = kernel_basis(m)
            assert r + ker.dim == cols
            assert r == rank(m.transpose())
            for vec in ker.basis:
                assert m.apply(dict(vec)) == {}

    def test_modular_rank_agrees(self):
        rng = random.Random(7)
        for _ in range(15):
            m = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
            assert rank_modular(m) == rank(m)

    def test_column_space_dim(self):
        m = mat(3, 3, {(0, 0): 1, (1, 0): 2, (0, 1): 1, (1, 1): 2, (2, 2): 1})
        space = column_space(m)
        assert space.dim == rank(m) == 2


class TestSolve:
    def test_consistent_system(self):
        rng = random.Random(99)
        for _ in range(20):
            rows = rng.randint(1, 7)
            cols = rng.randint(1, 7)
            m = random_matrix(rng, rows, cols, density=0.5)
            x0 = {c: F(rng.randint(-4, 4)) for c in range(cols) if rng.random() < 0.6}
            x0 = {c: v for c, v in x0.items() if v}
            b = m.apply(x0)
            x, residual = solve(m, b)
            assert residual == {}
            assert m.apply(x) == b

    def test_inconsistent_system(self):
        m = mat(2, 1, {(0, 0): 1, (1, 0): 1})
        x, residual = solve(m, {0: F(1), 1: F(2)})
        assert residual != {}


class TestSubspace:
    def test_from_spanning_canonical(self):
        s = Subspace.from_spanning([{0: F(2), 1: F(4)}, {0: F(1), 1: F(2)}], 3)
        assert s.dim == 1
        assert s.basis[0] == {0: F(1), 1: F(2)}

    def test_rejects_non_canonical_basis(self):
        with pytest.raises(ValueError):
            Subspace(2, ({0: F(2)},))

    def test_contains(self):
        s = Subspace.from_spanning([{0: F(1), 1: F(1)}, {2: F(1)}], 3)
        assert s.contains({0: F(3), 1: F(3), 2: F(-1)})
        assert not s.contains({0: F(1)})

    def test_full(self):
        assert Subspace.full(4).dim == 4

    def test_project_and_restrict(self):
        # the line through (1, 0, 1): projects onto coordinate 0 but has
        # no nonzero vector supported on coordinates (0, 1)
        line = Subspace.from_spanning([{0: F(1), 2: F(1)}], 3)
        assert project(line, (0, 1)).dim == 1
        assert restrict_to_coords(line, (0, 1)).dim == 0
        assert restrict_to_coords(line, (0, 2)).dim == 1
        # the plane x2 = x0 + x1 meets the plane x2 = 0 in the line
        # through (1, -1, 0)
        plane = Subspace.from_spanning(
            [{0: F(1), 2: F(1)}, {1: F(1), 2: F(1)}], 3
        )
        proj = project(plane, (0, 1))
        assert proj.ambient_dim == 2 and proj.dim == 2
        supported = restrict_to_coords(plane, (0, 1))
        assert supported.dim == 1
        assert supported.contains({0: F(1), 1: F(-1)})

    def test_restrict_outside_is_whole_kernel_of_projection(self):
        rng = random.Random(5150)
        for _ in range(15):
            cols = rng.randint(2, 7)
            m = random_matrix(rng, rng.randint(1, 5), cols)
            s = kernel_basis(m)
            coords = tuple(c for c in range(cols) if rng.random() < 0.5)
            if not coords or len(coords) == cols:
                continue
            complement = tuple(c for c in range(cols) if c not in coords)
            proj = project(s, coords)
            hidden = restrict_to_coords(s, complement)
            assert proj.dim + hidden.dim == s.dim
            assert restrict_to_coords(s, coords).dim <= proj.dim <= s.dim

    def test_embed_round_trip(self):
        s = Subspace.from_spanning([{0: F(1), 1: F(-2)}], 2)
        big = embed(s, (1, 3), 5)
        assert big.ambient_dim == 5
        assert big.contains({1: F(1), 3: F(-2)})
        back = project(big, (1, 3))
        assert subspace_equal(back, s)

    def test_subspace_equal_requires_same_ambient(self):
        a = Subspace.full(2)
        b = Subspace.full(3)
        with pytest.raises(ValueError):
            subspace_equal(a, b)

    def test_sum_dim(self):
        a = Subspace.from_spanning([{0: F(1)}], 3)
        b = Subspace.from_spanning([{0: F(1)}, {1: F(1)}], 3)
        assert subspace_sum_dim(a, b) == 2
        c = Subspace.from_spanning([{2: F(1)}], 3)
        assert subspace_sum_dim(a, c) == 2
