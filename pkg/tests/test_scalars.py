from fractions import Fraction

import numpy as np
import pytest

from peq.errors import InputDomainError, ScalarOverflowError
from peq.permutations import (
    check_permutation,
    compose_permutations,
    invert_permutation,
    long_cycle,
    random_permutation,
    transposition,
)
from peq.scalars import ScalarField


class TestScalarField:
    def test_parse(self):
        assert ScalarField.parse("gf2") is ScalarField.GF2
        assert ScalarField.parse(ScalarField.INT) is ScalarField.INT
        with pytest.raises(InputDomainError):
            ScalarField.parse("complex")

    def test_int_rejects_fractions(self):
        assert ScalarField.INT.coerce("6/3") == 2
        assert ScalarField.INT.coerce(4.0) == 4
        with pytest.raises(InputDomainError):
            ScalarField.INT.coerce(Fraction(1, 2))
        with pytest.raises(InputDomainError):
            ScalarField.INT.coerce("x")
        with pytest.raises(ScalarOverflowError):
            ScalarField.INT.coerce(2 ** 63)

    def test_rational(self):
        assert ScalarField.RATIONAL.coerce("2/4") == Fraction(1, 2)
        assert ScalarField.RATIONAL.coerce(np.int64(3)) == Fraction(3)
        with pytest.raises(InputDomainError):
            ScalarField.RATIONAL.coerce("1/0")

    def test_gf2(self):
        assert ScalarField.GF2.coerce(-3) == 1
        assert ScalarField.GF2.normalize(np.array([2, 3, -1])).tolist() == [0, 1, 1]

    def test_exactness(self):
        assert not ScalarField.F64.is_exact
        assert all(f.is_exact for f in ScalarField if f is not ScalarField.F64)

    def test_encode_decode(self):
        assert ScalarField.RATIONAL.encode(Fraction(-2, 6)) == "-1/3"
        assert ScalarField.RATIONAL.decode("-1/3") == Fraction(-1, 3)
        assert ScalarField.INT.encode(np.int64(5)) == 5
        assert ScalarField.F64.decode(1) == 1.0

    def test_zeros(self):
        z = ScalarField.RATIONAL.zeros((2,))
        assert z.dtype == object
        assert all(isinstance(x, Fraction) for x in z)

    def test_check_bound(self):
        ScalarField.RATIONAL.check_bound(2 ** 80, "ok")
        with pytest.raises(ScalarOverflowError):
            ScalarField.INT.check_bound(2 ** 63, "too big")


class TestPermutations:
    def test_check(self):
        assert check_permutation([1, 0, 2], 3) == (1, 0, 2)
        with pytest.raises(InputDomainError):
            check_permutation([0, 0], 2)
        with pytest.raises(InputDomainError):
            check_permutation([0, 1], 3)

    def test_inverse_and_compose(self, rng):
        for _ in range(10):
            sigma = random_permutation(6, rng)
            assert compose_permutations(sigma, invert_permutation(sigma)) == tuple(range(6))
            assert compose_permutations(invert_permutation(sigma), sigma) == tuple(range(6))

    def test_generators(self):
        assert transposition(4) == (1, 0, 2, 3)
        assert transposition(1) == (0,)
        assert long_cycle(4) == (1, 2, 3, 0)
