"""
Scalar fields for dense tensors.

Four instantiations share one numpy-backed interface:

    int       numpy int64, overflow bound checked before multiplying operations
    rational  numpy object array of fractions.Fraction (exact)
    gf2       numpy int64 holding 0/1, reduced mod 2 after every operation
    f64       numpy float64 (benchmarks only; never used for exact claims)
"""

from enum import Enum
from fractions import Fraction
from numbers import Integral, Rational
from typing import Any, Union

import numpy as np

from .errors import InputDomainError, ScalarOverflowError

Scalar = Union[int, Fraction, float]

INT64_MAX = int(np.iinfo(np.int64).max)


class ScalarField(Enum):
    """Scalar field of a tensor or layer."""
    INT = "int"
    RATIONAL = "rational"
    GF2 = "gf2"
    F64 = "f64"

    @classmethod
    def parse(cls, name: Union[str, "ScalarField"]) -> "ScalarField":
        if isinstance(name, ScalarField):
            return name
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(f.value for f in cls)
            raise InputDomainError(f"unknown scalar field {name!r} (expected one of {choices})") from None

    @property
    def dtype(self) -> Any:
        if self is ScalarField.RATIONAL:
            return object
        if self is ScalarField.F64:
            return np.float64
        return np.int64

    @property
    def is_exact(self) -> bool:
        return self is not ScalarField.F64

    def coerce(self, value: Any) -> Scalar:
        """Convert one value into this field, rejecting lossy conversions."""
        if self is ScalarField.F64:
            try:
                return float(value)
            except (TypeError, ValueError):
                raise InputDomainError(f"not a float: {value!r}") from None
        if self is ScalarField.RATIONAL:
            try:
                if isinstance(value, np.integer):
                    value = int(value)
                return Fraction(value)
            except (TypeError, ValueError, ZeroDivisionError):
                raise InputDomainError(f"not a rational: {value!r}") from None
        integer = _as_integer(value)
        if self is ScalarField.GF2:
            return integer % 2
        if abs(integer) > INT64_MAX:
            raise ScalarOverflowError(f"integer {integer} does not fit in int64")
        return integer

    def array(self, values: Any) -> np.ndarray:
        """Build an array of this field from nested sequences or an array."""
        raw = np.asarray(values, dtype=object)
        coerced = [self.coerce(x) for x in raw.ravel()]
        out = np.empty(len(coerced), dtype=self.dtype)
        out[:] = coerced
        return out.reshape(raw.shape)

    def zeros(self, shape) -> np.ndarray:
        if self is ScalarField.RATIONAL:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros(shape, dtype=self.dtype)

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        """Return the canonical representative of every entry."""
        if self is ScalarField.GF2:
            return np.mod(arr, 2)
        return arr

    def encode(self, value: Scalar) -> Union[int, float, str]:
        """JSON representation of one scalar."""
        if self is ScalarField.RATIONAL:
            value = Fraction(value)
            return f"{value.numerator}/{value.denominator}"
        if self is ScalarField.F64:
            return float(value)
        return int(value)

    def decode(self, raw: Any) -> Scalar:
        return self.coerce(raw)

    def from_integers(self, arr: np.ndarray) -> np.ndarray:
        """Fast conversion of an integer array (masks, random draws)."""
        if self is ScalarField.RATIONAL:
            return self.array(arr)
        return self.normalize(np.asarray(arr).astype(self.dtype))

    def max_abs(self, arr: np.ndarray) -> int:
        """Largest absolute entry for INT overflow bookkeeping; 0 for other fields."""
        if self is not ScalarField.INT or arr.size == 0:
            return 0
        return int(np.max(np.abs(arr)))

    def check_bound(self, bound: int, what: str):
        """Raise ScalarOverflowError if an INT result could exceed int64."""
        if self is ScalarField.INT and bound > INT64_MAX:
            raise ScalarOverflowError(
                f"{what}: intermediate values up to {bound} overflow int64; "
                f"use the rational field for large entries"
            )


def _as_integer(value: Any) -> int:
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, Integral):
        return int(value)
    if isinstance(value, Rational):
        if value.denominator != 1:
            raise InputDomainError(f"not an integer: {value}")
        return int(value.numerator)
    if isinstance(value, (float, np.floating)):
        if not float(value).is_integer():
            raise InputDomainError(f"not an integer: {value}")
        return int(value)
    if isinstance(value, str):
        try:
            return _as_integer(Fraction(value))
        except (ValueError, ZeroDivisionError):
            raise InputDomainError(f"not an integer: {value!r}") from None
    raise InputDomainError(f"not an integer: {value!r}")
