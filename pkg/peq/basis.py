"""
Orbit basis e_P and diagram basis d_P of the Σₙ-invariant tensors.

e_P is the 0/1 tensor supported on index tuples whose equality pattern is
exactly P; d_P is supported on tuples constant on every block of P and
factors as a leg-permuted Kronecker product of diagonal tensors. Both bases
are indexed by the partitions of {0..l-1} with at most n blocks, and
d_P = Σ_{Q coarsens P} e_Q links them through the zeta matrix.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Dict, Optional, Sequence, Tuple
import logging

import numpy as np

from .config import PEQConfig, resolve
from .constants import MASK_CACHE_MAX_ENTRIES, MASK_CACHE_SIZE, VERIFY_FIELDS
from .errors import BasisIndexError, InputDomainError
from .linalg import rank_gf2, rank_rational
from .partitions import SetPartition, coarsenings, enumerate_partitions, zeta_and_moebius
from .permutations import check_permutation
from .scalars import Scalar, ScalarField
from .tensor import DenseTensor, diagonal_tensor, kron, permute_legs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactoredTensor:
    """d_P kept as diagonal factors plus a leg permutation.

    Attributes
    ----------
    n : int
        Base dimension.
    block_sizes : tuple of int
        Orders of the diagonal factors, in block order.
    tau : tuple of int
        Leg permutation applied to the Kronecker product of the factors.
    field : ScalarField
        Scalar field of the evaluated tensor.
    """
    n: int
    block_sizes: Tuple[int, ...]
    tau: Tuple[int, ...]
    field: ScalarField = ScalarField.INT

    def __post_init__(self):
        if any(s < 1 for s in self.block_sizes):
            raise InputDomainError(f"block sizes must be positive: {self.block_sizes}")
        object.__setattr__(self, "block_sizes", tuple(int(s) for s in self.block_sizes))
        object.__setattr__(self, "tau", check_permutation(self.tau, sum(self.block_sizes)))
        object.__setattr__(self, "field", ScalarField.parse(self.field))

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]], n: int,
                    field: ScalarField = ScalarField.INT) -> "FactoredTensor":
        """τ lists the positions of each block in turn."""
        return cls(n, tuple(len(b) for b in blocks), tuple(pos for b in blocks for pos in b), field)

    @property
    def l(self) -> int:
        return len(self.tau)

    def factors(self) -> Tuple[DenseTensor, ...]:
        return tuple(diagonal_tensor(self.n, s, self.field) for s in self.block_sizes)

    def evaluate(self) -> DenseTensor:
        product = DenseTensor.scalar(1, self.n, self.field)
        for factor in self.factors():
            product = kron(product, factor)
        return permute_legs(product, self.tau)


def _require_index(p: SetPartition, n: int):
    if p.num_blocks > n:
        raise BasisIndexError(p, n)


def _index_grid(l: int, n: int) -> np.ndarray:
    return np.indices((n,) * l) if l else np.zeros((0,), dtype=np.int64)


def _constant_mask(p: SetPartition, n: int) -> np.ndarray:
    grid = _index_grid(p.l, n)
    mask = np.ones((n,) * p.l, dtype=bool)
    for block in p.blocks:
        for pos in block[1:]:
            mask &= grid[pos] == grid[block[0]]
    return mask


def _orbit_mask(p: SetPartition, n: int) -> np.ndarray:
    grid = _index_grid(p.l, n)
    mask = _constant_mask(p, n)
    for a, b in combinations([block[0] for block in p.blocks], 2):
        mask &= grid[a] != grid[b]
    return mask


@lru_cache(maxsize=MASK_CACHE_SIZE)
def _cached_mask(p: SetPartition, n: int, orbit: bool) -> np.ndarray:
    mask = _orbit_mask(p, n) if orbit else _constant_mask(p, n)
    mask.flags.writeable = False
    return mask


def _mask_tensor(p: SetPartition, n: int, field: ScalarField, orbit: bool) -> DenseTensor:
    # only small boolean masks are cached; field arrays are built per call
    if n ** p.l <= MASK_CACHE_MAX_ENTRIES:
        mask = _cached_mask(p, n, orbit)
    else:
        mask = _orbit_mask(p, n) if orbit else _constant_mask(p, n)
    return DenseTensor(field.from_integers(mask.astype(np.int64)), n, field)


def orbit_basis(p: SetPartition, n: int, field: ScalarField = ScalarField.INT,
                config: Optional[PEQConfig] = None) -> DenseTensor:
    """e_P: ones exactly where the tuple's equality pattern is P.

    The zero tensor when P has more than n blocks.
    """
    resolve(config).ensure_capacity(f"orbit basis e[{p}]", n ** p.l)
    return _mask_tensor(p, n, ScalarField.parse(field), True)


def diagram_basis_factored(p: SetPartition, n: int,
                           field: ScalarField = ScalarField.INT) -> FactoredTensor:
    """d_P as diagonal factors ordered by block minimum and the leg permutation τ."""
    return FactoredTensor.from_blocks(p.blocks, n, field)


def diagram_basis_dense(p: SetPartition, n: int, field: ScalarField = ScalarField.INT,
                        config: Optional[PEQConfig] = None) -> DenseTensor:
    """d_P materialized: ones exactly on tuples constant on every block."""
    resolve(config).ensure_capacity(f"diagram basis d[{p}]", n ** p.l)
    return _mask_tensor(p, n, ScalarField.parse(field), False)


def index_tuple(p: SetPartition, n: int) -> Tuple[int, ...]:
    """Representative I_P: value k on the k-th block (0-based)."""
    _require_index(p, n)
    return p.rgs


def diagram_in_orbit(p: SetPartition, n: int) -> Dict[SetPartition, int]:
    """Coefficients of d_P in the orbit basis: 1 on each coarsening of P."""
    _require_index(p, n)
    support = set(coarsenings(p, n))
    return {q: int(q in support) for q in enumerate_partitions(p.l, n)}


def orbit_in_diagram(p: SetPartition, n: int) -> Dict[SetPartition, int]:
    """Coefficients of e_P in the diagram basis (a row of the Möbius matrix)."""
    _require_index(p, n)
    parts = enumerate_partitions(p.l, n)
    _, moebius = zeta_and_moebius(p.l, n)
    row = moebius[parts.index(p)]
    return {q: int(c) for q, c in zip(parts, row)}


def diagram_in_basis(p: SetPartition, n: int) -> Dict[SetPartition, int]:
    """Coefficients of d_P in the ≤ n-block diagram basis, for any P.

    When P has more than n blocks, d_P = Σ e_Q over its coarsenings with at
    most n blocks (the others vanish), and each e_Q is expanded by Möbius rows.
    """
    parts = enumerate_partitions(p.l, n)
    if p.num_blocks <= n:
        return {q: int(q == p) for q in parts}
    _, moebius = zeta_and_moebius(p.l, n)
    index = {q: i for i, q in enumerate(parts)}
    total = np.zeros(len(parts), dtype=np.int64)
    for q in coarsenings(p, n):
        total += moebius[index[q]]
    return {q: int(c) for q, c in zip(parts, total)}


def dual_functional(p: SetPartition, n: int, v: DenseTensor) -> Scalar:
    """λ_P(v) = ⟨e_{I_P}, v⟩, i.e. the entry of v at I_P."""
    _require_index(p, n)
    if v.n != n or v.order != p.l:
        raise InputDomainError(f"λ[{p}] needs an order-{p.l} tensor over n={n}, got {v!r}")
    return v.entry(index_tuple(p, n))


def expand_in_diagram_basis(v: DenseTensor,
                            config: Optional[PEQConfig] = None) -> Dict[SetPartition, Scalar]:
    """Coefficients of an invariant tensor in the diagram basis.

    Orbit coefficients are read off at the representatives I_Q, then mapped
    through the Möbius matrix. The reconstruction is checked exactly.

    Raises
    ------
    InputDomainError
        If ``v`` is not Σₙ-invariant.
    """
    field, n, l = v.field, v.n, v.order
    parts = enumerate_partitions(l, n)
    _, moebius = zeta_and_moebius(l, n)
    orbit_coeffs = [v.entry(q.rgs) for q in parts]
    coeffs: Dict[SetPartition, Scalar] = {}
    for j, r in enumerate(parts):
        total = field.coerce(0)
        for i, c in enumerate(orbit_coeffs):
            if moebius[i, j]:
                total = total + c * int(moebius[i, j])
        coeffs[r] = field.coerce(total)
    rebuilt = DenseTensor.zeros(n, l, field)
    for r, c in coeffs.items():
        if c:
            rebuilt = rebuilt + diagram_basis_dense(r, n, field, config).scale(c)
    if rebuilt != v:
        raise InputDomainError("tensor is not Σn-invariant; it has no diagram-basis expansion")
    return coeffs


@dataclass
class BasisReport:
    """Result of an exact basis check.

    Attributes
    ----------
    l, n : int
        Tensor order and base dimension.
    field : str
        "rational" or "gf2".
    count : int
        Number of diagram tensors (partitions with at most n blocks).
    rank : int
        Exact rank of their flattened matrix.
    spans_orbit_basis : bool
        Every e_P equals its Möbius expansion in the d_Q with zero residual.
    is_basis : bool
        rank == count and the spans agree.
    """
    l: int
    n: int
    field: str
    count: int
    rank: int
    spans_orbit_basis: bool
    is_basis: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "l": self.l,
            "n": self.n,
            "field": self.field,
            "count": self.count,
            "rank": self.rank,
            "is_basis": self.is_basis,
            "spans_orbit_basis": self.spans_orbit_basis,
        }


def verify_basis(l: int, n: int, field: str = "rational",
                 config: Optional[PEQConfig] = None) -> BasisReport:
    """Check exactly that the d_P with at most n blocks form a basis.

    Parameters
    ----------
    l : int
        Tensor order.
    n : int
        Base dimension.
    field : {"rational", "gf2"}
        Field over which the rank is computed.
    config : PEQConfig or None
        Capacity bound for the count × n^l matrix.
    """
    if field not in VERIFY_FIELDS:
        raise InputDomainError(f"verify field must be one of {VERIFY_FIELDS}, got {field!r}")
    if l < 0 or n < 1:
        raise InputDomainError(f"need l >= 0 and n >= 1, got l={l}, n={n}")
    config = resolve(config)
    parts = enumerate_partitions(l, n)
    config.ensure_capacity(f"basis matrix for l={l}, n={n}", len(parts) * n ** l)

    diagram_rows = np.stack([diagram_basis_dense(p, n, config=config).data.ravel() for p in parts])
    orbit_rows = np.stack([orbit_basis(p, n, config=config).data.ravel() for p in parts])
    if field == "gf2":
        rank = rank_gf2(diagram_rows)
    else:
        rank = rank_rational(diagram_rows)

    _, moebius = zeta_and_moebius(l, n)
    residual = moebius @ diagram_rows - orbit_rows
    if field == "gf2":
        residual = np.mod(residual, 2)
    spans = not residual.any()

    report = BasisReport(
        l=l,
        n=n,
        field=field,
        count=len(parts),
        rank=rank,
        spans_orbit_basis=spans,
        is_basis=rank == len(parts) and spans,
    )
    logger.info(f"verify_basis l={l} n={n} over {field}: rank {rank}/{len(parts)}, spans={spans}")
    return report
