"""
Dense order-l tensors over ℝⁿ ⊗ ⋯ ⊗ ℝⁿ with an exchangeable scalar field.

A DenseTensor wraps a read-only numpy array of shape (n,)*l in row-major
(last index fastest) layout. Indices are 0-based throughout the library.

Operations
----------
kron            Kronecker (outer) product, orders add
permute_legs    rearrange tensor factors by a permutation τ
act             diagonal Σₙ action on every index
inner           sum of entrywise products
contract        pairwise leg contraction (numpy tensordot)
diagonal_tensor ones exactly at (j, ..., j)
is_invariant    fixed by the Σₙ generators (0 1) and (0 1 ... n-1)
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import json
import logging

import numpy as np

from .errors import InputDomainError
from .permutations import (
    check_permutation,
    invert_permutation,
    long_cycle,
    transposition,
)
from .scalars import Scalar, ScalarField

logger = logging.getLogger(__name__)


@dataclass
class OpCounter:
    """Tally of scalar operations executed by the tensor kernels.

    Attributes
    ----------
    adds : int
        Scalar additions (a sum of k terms costs k).
    muladds : int
        Fused multiply-adds of dense contractions.
    copies : int
        Entries written by pure indexing (transfer, broadcast).
    """
    adds: int = 0
    muladds: int = 0
    copies: int = 0

    @property
    def arithmetic(self) -> int:
        """Everything except copies."""
        return self.adds + self.muladds

    def to_dict(self) -> Dict[str, int]:
        return {
            "adds": self.adds,
            "muladds": self.muladds,
            "copies": self.copies,
        }


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """Order-l tensor with n^l entries.

    Attributes
    ----------
    data : np.ndarray
        Array of shape (n,)*l; stored read-only.
    n : int
        Base dimension.
    field : ScalarField
        Scalar field of the entries.
    """

    data: np.ndarray
    n: int
    field: ScalarField = ScalarField.INT

    def __post_init__(self):
        field = ScalarField.parse(self.field)
        if int(self.n) < 1:
            raise InputDomainError(f"base dimension must be positive, got {self.n}")
        data = self.data
        if isinstance(data, np.ndarray) and data.dtype == np.dtype(field.dtype):
            arr = data.copy() if data.flags.writeable else data
        else:
            arr = field.array(data)
        if arr.shape != (self.n,) * arr.ndim:
            raise InputDomainError(f"shape {arr.shape} is not (n,)*order for n={self.n}")
        arr = field.normalize(arr)
        if arr.flags.writeable:
            arr.flags.writeable = False
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "field", field)

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, n: int, order: int, field: ScalarField = ScalarField.INT) -> "DenseTensor":
        field = ScalarField.parse(field)
        return cls(field.zeros((n,) * order), n, field)

    @classmethod
    def scalar(cls, value: Any, n: int, field: ScalarField = ScalarField.INT) -> "DenseTensor":
        """Order-0 tensor (the empty tensor power is the scalars)."""
        field = ScalarField.parse(field)
        return cls(field.array(value), n, field)

    @classmethod
    def basis_vector(cls, index: Sequence[int], n: int,
                     field: ScalarField = ScalarField.INT) -> "DenseTensor":
        """Standard basis tensor e_{i₁} ⊗ ⋯ ⊗ e_{i_l} (0-based index)."""
        field = ScalarField.parse(field)
        index = tuple(int(i) for i in index)
        if any(i < 0 or i >= n for i in index):
            raise InputDomainError(f"index {index} outside 0..{n - 1}")
        arr = field.zeros((n,) * len(index))
        arr[index] = field.coerce(1)
        return cls(arr, n, field)

    @classmethod
    def random_integers(cls, n: int, order: int, rng: np.random.Generator,
                        low: int = -5, high: int = 5,
                        field: ScalarField = ScalarField.INT) -> "DenseTensor":
        """Tensor of uniform integers in [low, high], cast into ``field``."""
        values = rng.integers(low, high + 1, size=(n,) * order)
        return cls(ScalarField.parse(field).from_integers(values), n, field)

    # -- views --------------------------------------------------------------

    @property
    def order(self) -> int:
        return self.data.ndim

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.data.shape

    def entry(self, index: Sequence[int]) -> Scalar:
        return self.field.coerce(self.data[tuple(index)])

    def tolist(self) -> Any:
        """Nested lists of Python scalars."""
        values = [self.field.coerce(x) for x in self.data.ravel()]
        arr = np.empty(len(values), dtype=object)
        arr[:] = values
        return arr.reshape(self.shape).tolist() if self.order else values[0]

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return (
            self.n == other.n
            and self.field is other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "DenseTensor") -> "DenseTensor":
        _check_same_space(self, other, "add")
        self.field.check_bound(self.field.max_abs(self.data) + self.field.max_abs(other.data), "add")
        return DenseTensor(self.data + other.data, self.n, self.field)

    def __sub__(self, other: "DenseTensor") -> "DenseTensor":
        _check_same_space(self, other, "subtract")
        self.field.check_bound(self.field.max_abs(self.data) + self.field.max_abs(other.data), "subtract")
        return DenseTensor(self.data - other.data, self.n, self.field)

    def __neg__(self) -> "DenseTensor":
        return DenseTensor(-self.data, self.n, self.field)

    def scale(self, c: Any) -> "DenseTensor":
        """Multiply every entry by the scalar ``c``."""
        c = self.field.coerce(c)
        if self.field is ScalarField.INT:
            self.field.check_bound(self.field.max_abs(self.data) * abs(c), "scale")
        return DenseTensor(self.data * c, self.n, self.field)

    def __repr__(self) -> str:
        return f"DenseTensor(n={self.n}, order={self.order}, field={self.field.value})"

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> Dict[str, Any]:
        """Tensor file format: n, order, scalar and row-major data."""
        return {
            "n": self.n,
            "order": self.order,
            "scalar": self.field.value,
            "data": [self.field.encode(x) for x in self.data.ravel()],
        }

    @classmethod
    def from_json_dict(cls, obj: Dict[str, Any]) -> "DenseTensor":
        json_object(obj, "tensor", {"n", "order", "scalar", "data"})
        n, order = json_int(obj, "n", "tensor"), json_int(obj, "order", "tensor")
        field = ScalarField.parse(obj["scalar"])
        if n < 1 or order < 0:
            raise InputDomainError(f"invalid tensor header n={n}, order={order}")
        data = obj["data"]
        if not isinstance(data, list) or len(data) != n ** order:
            got = len(data) if isinstance(data, list) else type(data).__name__
            raise InputDomainError(f"tensor data must list {n ** order} entries, got {got}")
        values = [field.decode(x) for x in data]
        arr = np.empty(len(values), dtype=field.dtype)
        arr[:] = values
        return cls(arr.reshape((n,) * order), n, field)

    def save(self, path: Union[str, Path]):
        with open(path, "w") as f:
            json.dump(self.to_json_dict(), f)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "DenseTensor":
        with open(path, "r") as f:
            try:
                obj = json.load(f)
            except json.JSONDecodeError as exc:
                raise InputDomainError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_json_dict(obj)


def json_object(obj: Any, what: str, required: Sequence[str] = ()) -> Dict[str, Any]:
    """Check that a decoded JSON document is an object carrying ``required`` keys."""
    if not isinstance(obj, dict):
        raise InputDomainError(f"{what} JSON must be an object, got {type(obj).__name__}")
    missing = set(required) - set(obj)
    if missing:
        raise InputDomainError(f"{what} JSON is missing keys: {sorted(missing)}")
    return obj


def json_int(obj: Dict[str, Any], key: str, what: str) -> int:
    """Read an integer header field; floats, booleans, strings and null are rejected."""
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputDomainError(f"{what} JSON '{key}' must be an integer, got {value!r}")
    return value


def _check_same_space(v: DenseTensor, w: DenseTensor, what: str):
    if v.n != w.n:
        raise InputDomainError(f"{what}: base dimensions differ ({v.n} vs {w.n})")
    if v.field is not w.field:
        raise InputDomainError(f"{what}: scalar fields differ ({v.field.value} vs {w.field.value})")


def _check_same_shape(v: DenseTensor, w: DenseTensor, what: str):
    _check_same_space(v, w, what)
    if v.order != w.order:
        raise InputDomainError(f"{what}: orders differ ({v.order} vs {w.order})")


def kron(v: DenseTensor, w: DenseTensor) -> DenseTensor:
    """Tensor product: (v ⊗ w)[I, J] = v[I]·w[J]."""
    _check_same_space(v, w, "kron")
    v.field.check_bound(v.field.max_abs(v.data) * v.field.max_abs(w.data), "kron")
    return DenseTensor(np.multiply.outer(v.data, w.data), v.n, v.field)


def permute_legs(v: DenseTensor, tau: Sequence[int]) -> DenseTensor:
    """Rearrange tensor factors: out[i₀, …, i_{l-1}] = v[i_{τ(0)}, …, i_{τ(l-1)}]."""
    tau = check_permutation(tau, v.order)
    return DenseTensor(np.transpose(v.data, invert_permutation(tau)), v.n, v.field)


def act(sigma: Sequence[int], v: DenseTensor) -> DenseTensor:
    """Diagonal action: out[σ(i₀), …, σ(i_{l-1})] = v[i₀, …, i_{l-1}]."""
    sigma = check_permutation(sigma, v.n)
    if v.order == 0:
        return v
    inverse = np.array(invert_permutation(sigma))
    return DenseTensor(v.data[np.ix_(*([inverse] * v.order))], v.n, v.field)


def inner(v: DenseTensor, w: DenseTensor) -> Scalar:
    """Σ_I v[I]·w[I]."""
    _check_same_shape(v, w, "inner")
    field = v.field
    field.check_bound(field.max_abs(v.data) * field.max_abs(w.data) * v.data.size, "inner")
    return field.coerce(np.sum(v.data * w.data))


def _check_pairs(v: DenseTensor, w: DenseTensor,
                 pairs: Sequence[Tuple[int, int]]) -> Tuple[List[int], List[int]]:
    v_legs, w_legs = [], []
    for pair in pairs:
        try:
            a, b = (int(x) for x in pair)
        except (TypeError, ValueError):
            raise InputDomainError(f"contraction pair {pair!r} is not (v-leg, w-leg)") from None
        if not 0 <= a < v.order or not 0 <= b < w.order:
            raise InputDomainError(f"contraction pair {(a, b)} out of range for orders {v.order}, {w.order}")
        v_legs.append(a)
        w_legs.append(b)
    if len(set(v_legs)) != len(v_legs) or len(set(w_legs)) != len(w_legs):
        raise InputDomainError(f"contraction pairs repeat a leg: {list(pairs)}")
    return v_legs, w_legs


def contract(v: DenseTensor, w: DenseTensor, pairs: Sequence[Tuple[int, int]],
             counter: Optional[OpCounter] = None) -> DenseTensor:
    """Sum products over paired legs.

    Unpaired legs of ``v`` come first in the result, then unpaired legs of
    ``w``, each group in its original order.
    """
    _check_same_space(v, w, "contract")
    v_legs, w_legs = _check_pairs(v, w, pairs)
    d = len(v_legs)
    out_order = v.order + w.order - 2 * d
    if counter is not None:
        counter.muladds += v.n ** (out_order + d)
    if d == 0:
        return kron(v, w)
    v.field.check_bound(v.field.max_abs(v.data) * v.field.max_abs(w.data) * v.n ** d, "contract")
    data = np.tensordot(v.data, w.data, axes=(v_legs, w_legs))
    return DenseTensor(np.asarray(data, dtype=v.field.dtype), v.n, v.field)


def diagonal_tensor(n: int, p: int, field: ScalarField = ScalarField.INT) -> DenseTensor:
    """Order-p tensor with ones at (j, …, j); p = 0 is the scalar 1."""
    if p < 0:
        raise InputDomainError(f"order must be non-negative, got {p}")
    field = ScalarField.parse(field)
    arr = field.zeros((n,) * p)
    if p == 0:
        arr[()] = field.coerce(1)
    else:
        idx = np.arange(n)
        arr[(idx,) * p] = field.coerce(1)
    return DenseTensor(arr, n, field)


def is_invariant(v: DenseTensor) -> bool:
    """True iff v is fixed by the diagonal Σₙ action."""
    if v.order == 0 or v.n == 1:
        return True
    return act(transposition(v.n), v) == v and act(long_cycle(v.n), v) == v
