from fractions import Fraction

import numpy as np
import pytest

from peq.linalg import rank_gf2, rank_rational, unitriangular_inverse


class TestRankRational:
    def test_identity(self):
        assert rank_rational(np.eye(4, dtype=np.int64)) == 4

    def test_dependent_rows(self):
        m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
        assert rank_rational(m) == 2

    def test_fractions(self):
        m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]
        assert rank_rational(m) == 1

    def test_zero_and_wide(self):
        assert rank_rational(np.zeros((3, 5), dtype=np.int64)) == 0
        assert rank_rational([[0, 1, 0, 1], [0, 2, 1, 0]]) == 2

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_ones_and_off_diagonal(self, n):
        ones = np.ones((n, n), dtype=np.int64)
        assert rank_rational(ones) == 1
        assert rank_rational(ones - np.eye(n, dtype=np.int64)) == n

    def test_random_against_numpy(self, rng):
        for _ in range(10):
            m = rng.integers(-3, 4, size=(5, 7))
            m[4] = m[0] + 2 * m[1]
            assert rank_rational(m) == np.linalg.matrix_rank(m)

    def test_requires_2d(self):
        with pytest.raises(ValueError):
            rank_rational([1, 2, 3])


class TestRankGF2:
    def test_differs_from_rationals(self):
        # 11^T - I has full rank over Q but is singular mod 2 for odd n
        m = np.ones((3, 3), dtype=np.int64) - np.eye(3, dtype=np.int64)
        assert rank_rational(m) == 3
        assert rank_gf2(m) == 2

    def test_reduces_entries(self):
        assert rank_gf2([[2, 4], [0, 1]]) == 1


class TestUnitriangularInverse:
    def test_upper(self):
        u = np.array([[1, 1, 1], [0, 1, 1], [0, 0, 1]])
        inv = unitriangular_inverse(u, [0, 1, 2])
        assert np.array_equal(u @ inv, np.eye(3, dtype=np.int64))

    def test_reordered(self):
        lower = np.array([[1, 0], [1, 1]])
        inv = unitriangular_inverse(lower, [1, 0])
        assert inv.tolist() == [[1, 0], [-1, 1]]

    def test_rejects_non_triangular(self):
        with pytest.raises(ValueError):
            unitriangular_inverse(np.array([[1, 1], [1, 1]]), [0, 1])
