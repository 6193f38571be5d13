"""
Set partitions of {0, ..., l-1} in restricted-growth-string form.

A partition is stored as its rgs: position i carries the label of its block,
blocks are labelled 0, 1, 2, ... in order of their smallest element. The rgs is
unique per partition, hashable, and its lexicographic order is the enumeration
order used to index basis elements and layer coefficients.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging

import numpy as np
from scipy.special import stirling2

from .errors import InputDomainError
from .linalg import unitriangular_inverse

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class SetPartition:
    """Canonical set partition.

    Attributes
    ----------
    rgs : tuple of int
        Restricted growth string: ``rgs[0] == 0`` and every label is at most
        one more than the largest label before it.
    """

    rgs: Tuple[int, ...]

    def __post_init__(self):
        try:
            rgs = tuple(int(x) for x in self.rgs)
        except (TypeError, ValueError):
            raise InputDomainError(f"partition labels must be integers: {self.rgs!r}") from None
        fresh = 0
        for pos, label in enumerate(rgs):
            if label < 0 or label > fresh:
                raise InputDomainError(
                    f"'{' '.join(map(str, rgs))}' is not a restricted growth string: "
                    f"label {label} at position {pos} (expected 0..{fresh})"
                )
            if label == fresh:
                fresh += 1
        object.__setattr__(self, "rgs", rgs)

    @classmethod
    def from_labels(cls, labels: Iterable) -> "SetPartition":
        """Canonicalize any block labelling (equal labels = same block)."""
        relabel: Dict = {}
        return cls(tuple(relabel.setdefault(x, len(relabel)) for x in labels))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        """Build from explicit blocks covering {0, ..., l-1} exactly once."""
        owner: Dict[int, int] = {}
        for b, block in enumerate(blocks):
            members = list(block)
            if not members:
                raise InputDomainError("blocks must be nonempty")
            for pos in members:
                if pos in owner:
                    raise InputDomainError(f"position {pos} appears in two blocks")
                owner[pos] = b
        l = len(owner)
        if sorted(owner) != list(range(l)):
            raise InputDomainError(f"blocks do not cover 0..{l - 1}: {sorted(owner)}")
        return cls.from_labels(owner[pos] for pos in range(l))

    @classmethod
    def parse(cls, text: str) -> "SetPartition":
        """Parse the space-separated rgs text format, e.g. ``"0 0 1 2"``."""
        tokens = text.split()
        try:
            labels = tuple(int(t) for t in tokens)
        except ValueError:
            raise InputDomainError(f"partition {text!r} must be space-separated integers") from None
        return cls(labels)

    @property
    def l(self) -> int:
        return len(self.rgs)

    @property
    def num_blocks(self) -> int:
        return max(self.rgs) + 1 if self.rgs else 0

    @cached_property
    def blocks(self) -> Tuple[Tuple[int, ...], ...]:
        """Blocks as sorted position tuples, ordered by minimum element."""
        out: List[List[int]] = [[] for _ in range(self.num_blocks)]
        for pos, label in enumerate(self.rgs):
            out[label].append(pos)
        return tuple(tuple(b) for b in out)

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.rgs)


def partition_of_tuple(t: Sequence[int], n: Optional[int] = None) -> SetPartition:
    """Partition of positions induced by equal values of ``t`` (values 1..n)."""
    values = []
    for pos, x in enumerate(t):
        try:
            value = int(x)
        except (TypeError, ValueError):
            raise InputDomainError(f"tuple entry {x!r} at position {pos} is not an integer") from None
        if value < 1 or (n is not None and value > n):
            bound = "n" if n is None else str(n)
            raise InputDomainError(f"tuple entry {value} at position {pos} outside 1..{bound}")
        values.append(value)
    if not values:
        raise InputDomainError("tuple must have at least one entry")
    return SetPartition.from_labels(values)


def _check_sizes(l: int, max_blocks: int):
    if l < 0:
        raise InputDomainError(f"ground-set size must be non-negative, got {l}")
    if max_blocks < 1:
        raise InputDomainError(f"max_blocks must be positive, got {max_blocks}")


@lru_cache(maxsize=None)
def _enumerate(l: int, max_blocks: int) -> Tuple[SetPartition, ...]:
    out: List[SetPartition] = []
    prefix: List[int] = []

    def extend(used: int):
        if len(prefix) == l:
            out.append(SetPartition(tuple(prefix)))
            return
        for label in range(min(used + 1, max_blocks)):
            prefix.append(label)
            extend(max(used, label + 1))
            prefix.pop()

    extend(0)
    return tuple(out)


def enumerate_partitions(l: int, max_blocks: int) -> List[SetPartition]:
    """All partitions of {0..l-1} with at most ``max_blocks`` blocks, rgs-lexicographic."""
    _check_sizes(l, max_blocks)
    return list(_enumerate(l, max_blocks))


def refines(q: SetPartition, p: SetPartition) -> bool:
    """True iff every block of ``q`` lies inside a block of ``p``."""
    if q.l != p.l:
        raise InputDomainError(f"cannot compare partitions of {q.l} and {p.l} elements")
    image: Dict[int, int] = {}
    for a, b in zip(q.rgs, p.rgs):
        if image.setdefault(a, b) != b:
            return False
    return True


def coarsenings(p: SetPartition, max_blocks: int) -> List[SetPartition]:
    """All q with ``p`` refining q and at most ``max_blocks`` blocks, sorted."""
    _check_sizes(p.l, max_blocks)
    merges = enumerate_partitions(p.num_blocks, max_blocks)
    return sorted(SetPartition(tuple(r.rgs[label] for label in p.rgs)) for r in merges)


def count_partitions(l: int, max_blocks: int) -> int:
    """Number of partitions of an l-set into at most ``max_blocks`` blocks."""
    _check_sizes(l, max_blocks)
    if l == 0:
        return 1
    return sum(int(stirling2(l, k, exact=True)) for k in range(1, min(l, max_blocks) + 1))


@lru_cache(maxsize=None)
def _zeta_moebius(l: int, max_blocks: int) -> Tuple[np.ndarray, np.ndarray]:
    parts = _enumerate(l, max_blocks)
    index = {p: i for i, p in enumerate(parts)}
    size = len(parts)
    zeta = np.zeros((size, size), dtype=np.int64)
    for i, p in enumerate(parts):
        for q in coarsenings(p, max_blocks):
            zeta[i, index[q]] = 1
    # finer partitions first: zeta is upper unitriangular in this order
    order = sorted(range(size), key=lambda i: (-parts[i].num_blocks, parts[i].rgs))
    moebius = unitriangular_inverse(zeta, order)
    logger.debug(f"zeta/moebius for l={l}, max_blocks={max_blocks}: {size}x{size}")
    zeta.flags.writeable = False
    moebius.flags.writeable = False
    return zeta, moebius


def zeta_and_moebius(l: int, max_blocks: int) -> Tuple[np.ndarray, np.ndarray]:
    """Zeta matrix of the refinement order and its exact integer inverse.

    Rows and columns follow ``enumerate_partitions(l, max_blocks)``;
    ``Z[p, q] = 1`` iff q coarsens p.
    """
    _check_sizes(l, max_blocks)
    zeta, moebius = _zeta_moebius(l, max_blocks)
    return zeta.copy(), moebius.copy()
