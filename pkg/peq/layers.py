"""
Permutation equivariant linear layers (ℝⁿ)^⊗m → (ℝⁿ)^⊗m'.

A layer is a sparse coefficient map over the diagram basis d_P, P ranging
over partitions of the m + m' hom-tensor legs with at most n blocks. Legs
0..m-1 pair with the input in order; legs m..m+m'-1 are the output legs.
"""

from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union
import json
import logging

import numpy as np

from .basis import diagram_basis_dense, diagram_in_basis, expand_in_diagram_basis
from .config import PEQConfig, resolve
from .errors import BasisIndexError, InputDomainError
from .fastapply import apply_fast, plan
from .partitions import SetPartition, enumerate_partitions
from .scalars import Scalar, ScalarField
from .tensor import DenseTensor, contract, json_int, json_object

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EquivariantLayer:
    """Linear Σₙ-equivariant map given by diagram-basis coefficients.

    Attributes
    ----------
    m : int
        Input tensor order.
    mprime : int
        Output tensor order.
    n : int
        Base dimension (set size).
    coeffs : mapping SetPartition -> scalar
        Nonzero coefficients; absent partitions have coefficient zero. Keys
        may be given as rgs strings.
    field : ScalarField
        Scalar field of the coefficients and of the tensors the layer maps.
    """

    m: int
    mprime: int
    n: int
    coeffs: Mapping[Any, Any]
    field: ScalarField = ScalarField.INT

    def __post_init__(self):
        if self.m < 0 or self.mprime < 0 or self.n < 1:
            raise InputDomainError(f"need m, m' >= 0 and n >= 1, got {self.m}, {self.mprime}, {self.n}")
        field = ScalarField.parse(self.field)
        cleaned: Dict[SetPartition, Scalar] = {}
        for key, value in self.coeffs.items():
            p = key if isinstance(key, SetPartition) else SetPartition.parse(str(key))
            if p.l != self.m + self.mprime:
                raise InputDomainError(f"coefficient key [{p}] has {p.l} legs, layer has {self.m + self.mprime}")
            if p.num_blocks > self.n:
                raise BasisIndexError(p, self.n)
            value = field.coerce(value)
            if p in cleaned:
                value = field.coerce(cleaned[p] + value)
            cleaned[p] = value
        ordered = {p: cleaned[p] for p in sorted(cleaned) if cleaned[p]}
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", MappingProxyType(ordered))

    @classmethod
    def random(cls, m: int, mprime: int, n: int, rng: np.random.Generator,
               low: int = -3, high: int = 3, field: ScalarField = ScalarField.INT) -> "EquivariantLayer":
        """Layer with uniform integer coefficients on every basis element."""
        parts = enumerate_partitions(m + mprime, n)
        values = rng.integers(low, high + 1, size=len(parts))
        return cls(m, mprime, n, {p: int(c) for p, c in zip(parts, values)}, field)

    @classmethod
    def deepsets(cls, n: int, a: Any, b: Any, field: ScalarField = ScalarField.INT) -> "EquivariantLayer":
        """v ↦ a·v + b·(Σᵢvᵢ)·𝟏, i.e. a·I + b·𝟏𝟏ᵀ."""
        return cls(1, 1, n, {SetPartition((0, 0)): a, SetPartition((0, 1)): b}, field)

    @property
    def l(self) -> int:
        return self.m + self.mprime

    def coefficient(self, p: SetPartition) -> Scalar:
        return self.coeffs.get(p, self.field.coerce(0))

    def coefficient_vector(self) -> List[Scalar]:
        """Coefficients over ``enumerate_partitions(m + m', n)`` in order."""
        return [self.coefficient(p) for p in enumerate_partitions(self.l, self.n)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EquivariantLayer):
            return NotImplemented
        return (
            (self.m, self.mprime, self.n, self.field) == (other.m, other.mprime, other.n, other.field)
            and dict(self.coeffs) == dict(other.coeffs)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (f"EquivariantLayer(m={self.m}, mprime={self.mprime}, n={self.n}, "
                f"field={self.field.value}, nonzero={len(self.coeffs)})")

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "mprime": self.mprime,
            "n": self.n,
            "scalar": self.field.value,
            "coeffs": {str(p): self.field.encode(c) for p, c in self.coeffs.items()},
        }

    @classmethod
    def from_json_dict(cls, obj: Dict[str, Any]) -> "EquivariantLayer":
        json_object(obj, "layer", {"m", "mprime", "n", "coeffs"})
        m, mprime, n = (json_int(obj, key, "layer") for key in ("m", "mprime", "n"))
        if not isinstance(obj["coeffs"], dict):
            raise InputDomainError("layer JSON 'coeffs' must be an object keyed by rgs strings")
        field = ScalarField.parse(obj.get("scalar", "int"))
        coeffs: Dict[SetPartition, Scalar] = {}
        for key, value in obj["coeffs"].items():
            p = SetPartition.parse(key)
            # keys are canonical rgs text
            if str(p) != key:
                raise InputDomainError(f"layer coefficient key {key!r} is not canonical, expected {str(p)!r}")
            coeffs[p] = field.decode(value)
        return cls(m, mprime, n, coeffs, field)

    def save(self, path: Union[str, Path]):
        with open(path, "w") as f:
            json.dump(self.to_json_dict(), f, indent=2)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "EquivariantLayer":
        with open(path, "r") as f:
            try:
                obj = json.load(f)
            except json.JSONDecodeError as exc:
                raise InputDomainError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_json_dict(obj)


def _check_input(layer: EquivariantLayer, v: DenseTensor):
    if v.n != layer.n or v.order != layer.m:
        raise InputDomainError(
            f"layer expects an order-{layer.m} tensor over n={layer.n}, got order {v.order} over n={v.n}"
        )
    if v.field is not layer.field:
        raise InputDomainError(f"layer field {layer.field.value} does not match input field {v.field.value}")


def layer_apply(layer: EquivariantLayer, v: DenseTensor) -> DenseTensor:
    """Σ_P coeffs[P] · apply_fast(plan(P), v)."""
    _check_input(layer, v)
    out = DenseTensor.zeros(layer.n, layer.mprime, layer.field)
    for p, c in layer.coeffs.items():
        out = out + apply_fast(plan(p, layer.m, layer.mprime, layer.n), v).scale(c)
    return out


def layer_to_dense(layer: EquivariantLayer, config: Optional[PEQConfig] = None) -> DenseTensor:
    """Hom-tensor Σ_P coeffs[P] · d_P of order m + m'."""
    config = resolve(config)
    config.ensure_capacity("layer hom-tensor", layer.n ** layer.l)
    out = DenseTensor.zeros(layer.n, layer.l, layer.field)
    for p, c in layer.coeffs.items():
        out = out + diagram_basis_dense(p, layer.n, layer.field, config).scale(c)
    return out


def layer_from_dense(tensor: DenseTensor, m: int, mprime: int,
                     config: Optional[PEQConfig] = None) -> EquivariantLayer:
    """Layer whose hom-tensor is ``tensor``; fails unless it is Σₙ-invariant."""
    if tensor.order != m + mprime:
        raise InputDomainError(f"tensor of order {tensor.order} cannot be a map of order {m} → {mprime}")
    coeffs = expand_in_diagram_basis(tensor, config)
    return EquivariantLayer(m, mprime, tensor.n, coeffs, tensor.field)


def kron_leg_permutation(first: EquivariantLayer, second: EquivariantLayer) -> Tuple[int, ...]:
    """Leg permutation taking kron(dense(first), dense(second)) to the combined hom-tensor.

    Combined domain is (first domain, second domain); combined codomain is
    (first codomain, second codomain).
    """
    m1, m1p, m2, m2p = first.m, first.mprime, second.m, second.mprime
    first_legs = list(range(m1)) + [m1 + m2 + k for k in range(m1p)]
    second_legs = [m1 + k for k in range(m2)] + [m1 + m2 + m1p + k for k in range(m2p)]
    return tuple(first_legs + second_legs)


def layer_kron(first: EquivariantLayer, second: EquivariantLayer) -> EquivariantLayer:
    """Tensor product of layers, an (m₁+m₂) → (m₁'+m₂') layer.

    d_P ⊗ d_Q is the diagram tensor of the disjoint union of P and Q placed
    on the combined legs; when that union has more than n blocks it is
    re-expressed in the ≤ n-block basis.
    """
    if first.n != second.n:
        raise InputDomainError(f"layer_kron: base dimensions differ ({first.n} vs {second.n})")
    if first.field is not second.field:
        raise InputDomainError("layer_kron: scalar fields differ")
    field, n = first.field, first.n
    legs = kron_leg_permutation(first, second)
    l1 = first.l
    combined: Dict[SetPartition, Scalar] = {}
    for p, c1 in first.coeffs.items():
        for q, c2 in second.coeffs.items():
            labels: List[int] = [0] * (l1 + second.l)
            for i, label in enumerate(p.rgs):
                labels[legs[i]] = label
            for j, label in enumerate(q.rgs):
                labels[legs[l1 + j]] = p.num_blocks + label
            union = SetPartition.from_labels(labels)
            for r, c in diagram_in_basis(union, n).items():
                if c:
                    combined[r] = field.coerce(combined.get(r, 0) + c1 * c2 * c)
    return EquivariantLayer(first.m + second.m, first.mprime + second.mprime, n, combined, field)


def layer_compose_dense(second: EquivariantLayer, first: EquivariantLayer,
                        config: Optional[PEQConfig] = None) -> DenseTensor:
    """Hom-tensor of second ∘ first, contracting over the shared m' legs."""
    if first.mprime != second.m:
        raise InputDomainError(f"cannot compose: first maps to order {first.mprime}, second expects {second.m}")
    if first.n != second.n or first.field is not second.field:
        raise InputDomainError("cannot compose layers over different n or fields")
    config = resolve(config)
    config.ensure_capacity("composed hom-tensor", first.n ** (first.m + second.mprime))
    dense_first = layer_to_dense(first, config)
    dense_second = layer_to_dense(second, config)
    return contract(dense_first, dense_second, [(first.m + k, k) for k in range(first.mprime)])


def layer_compose(second: EquivariantLayer, first: EquivariantLayer,
                  config: Optional[PEQConfig] = None) -> EquivariantLayer:
    """second ∘ first as a layer, via the dense hom-tensor."""
    dense = layer_compose_dense(second, first, config)
    return layer_from_dense(dense, first.m, second.mprime, config)
