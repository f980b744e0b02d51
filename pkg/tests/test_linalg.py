"""Tests for exact rational linear algebra (Bareiss-based)."""

import random
from fractions import Fraction

import pytest

from affinepowers import DimensionMismatch, Inconsistent
from affinepowers.linalg import QMatrix, kernel, rank, solve

F = Fraction


def M(rows) -> QMatrix:
    return QMatrix.from_rows(rows)


def random_matrix(rng, rows, cols, den=3):
    return M(
        [
            [F(rng.randint(-9, 9), rng.randint(1, den)) for _ in range(cols)]
            for _ in range(rows)
        ]
    )


class TestQMatrix:
    def test_identity(self):
        eye = QMatrix.identity(3)
        assert eye.rows == eye.cols == 3
        assert eye.mul_vec([F(1), F(2), F(3)]) == [F(1), F(2), F(3)]

    def test_mul_vec(self):
        a = M([[1, 2], [3, 4]])
        assert a.mul_vec([F(1), F(1)]) == [F(3), F(7)]

    def test_mul_vec_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            M([[1, 2]]).mul_vec([F(1)])

    def test_transpose(self):
        a = M([[1, 2, 3], [4, 5, 6]])
        t = a.transpose()
        assert t.rows == 3 and t.cols == 2
        assert t.entries[0] == (F(1), F(4))

    def test_ragged_rows_rejected(self):
        with pytest.raises(DimensionMismatch):
            M([[1, 2], [3]])


class TestRank:
    def test_zero_matrix(self):
        assert rank(M([[0, 0], [0, 0]])) == 0

    def test_identity_full_rank(self):
        assert rank(QMatrix.identity(4)) == 4

    def test_repeated_rows(self):
        assert rank(M([[1, 1, 1], [1, 1, 1], [1, 1, 1]])) == 1

    def test_rank_of_product_structure(self):
        # rows are multiples of (1, 2, 3)
        a = M([[1, 2, 3], [2, 4, 6], [-1, -2, -3]])
        assert rank(a) == 1

    def test_fractional_entries(self):
        a = M([[F(1, 2), F(1, 3)], [F(1, 3), F(1, 2)]])
        assert rank(a) == 2
        # and a genuinely proportional fractional pair collapses
        assert rank(M([[F(1, 2), F(1, 3)], [F(3, 2), F(1, 1)]])) == 1


class TestSolve:
    def test_identity_system(self):
        res = solve(QMatrix.identity(2), [F(5), F(-7)])
        assert res.vector == (F(5), F(-7))
        assert res.unique

    def test_unique_2x2(self):
        res = solve(M([[2, 1], [1, 3]]), [5, 10])
        assert res.vector == (F(1), F(3))
        assert res.unique

    def test_inconsistent(self):
        with pytest.raises(Inconsistent):
            solve(M([[1, 1], [1, 1]]), [1, 2])

    def test_underdetermined_flags_nonunique(self):
        res = solve(M([[1, 1]]), [2])
        assert not res.unique
        # returned vector is still a genuine solution
        assert sum(res.vector) == F(2)

    def test_overdetermined_consistent(self):
        # three stacked copies of the same equation pair
        a = M([[1, 0], [0, 1], [1, 1]])
        res = solve(a, [2, 3, 5])
        assert res.vector == (F(2), F(3))
        assert res.unique

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            solve(M([[1, 2]]), [1, 2])

    def test_fractional_solution(self):
        res = solve(M([[2, 0], [0, 3]]), [1, 1])
        assert res.vector == (F(1, 2), F(1, 3))

    def test_random_solvable_systems_exact(self):
        rng = random.Random(101)
        for _ in range(25):
            rows = rng.randint(1, 12)
            cols = rng.randint(1, 12)
            a = random_matrix(rng, rows, cols)
            x0 = [F(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(cols)]
            b = a.mul_vec(x0)
            res = solve(a, b)
            assert a.mul_vec(list(res.vector)) == b

    def test_unique_flag_matches_rank(self):
        rng = random.Random(103)
        for _ in range(20):
            rows = rng.randint(1, 8)
            cols = rng.randint(1, 8)
            a = random_matrix(rng, rows, cols)
            x0 = [F(rng.randint(-5, 5)) for _ in range(cols)]
            res = solve(a, a.mul_vec(x0))
            assert res.unique == (rank(a) == cols)


class TestKernel:
    def test_trivial_kernel(self):
        assert kernel(QMatrix.identity(3)) == []

    def test_one_dimensional(self):
        vecs = kernel(M([[1, 1]]))
        assert len(vecs) == 1
        assert vecs[0] in ([(F(1), F(-1))], [(F(-1), F(1))]) or vecs[0] == (
            F(1),
            F(-1),
        )

    def test_kernel_vectors_are_canonical_primitive(self):
        vecs = kernel(M([[F(1, 2), F(1, 2)]]))
        assert len(vecs) == 1
        v = vecs[0]
        # integer entries, first nonzero positive, content 1
        assert all(c.denominator == 1 for c in v)
        first = next(c for c in v if c)
        assert first > 0

    def test_two_dimensional(self):
        a = M([[1, 2, 3], [2, 4, 6]])
        vecs = kernel(a)
        assert len(vecs) == 2
        for v in vecs:
            assert a.mul_vec(list(v)) == [F(0), F(0)]

    def test_rank_nullity_random(self):
        rng = random.Random(107)
        for _ in range(25):
            rows = rng.randint(1, 12)
            cols = rng.randint(1, 12)
            a = random_matrix(rng, rows, cols)
            vecs = kernel(a)
            assert rank(a) + len(vecs) == cols
            for v in vecs:
                assert a.mul_vec(list(v)) == [F(0)] * rows
            if vecs:
                # basis vectors are independent: stack them as rows
                assert rank(M([list(v) for v in vecs])) == len(vecs)

    def test_kernel_determinism(self):
        a = M([[1, 2, 3, 4], [4, 3, 2, 1]])
        assert kernel(a) == kernel(a)

    def test_wide_zero_matrix(self):
        a = M([[0, 0, 0]])
        vecs = kernel(a)
        assert len(vecs) == 3
