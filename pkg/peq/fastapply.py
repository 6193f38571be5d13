"""
Apply d_P to a tensor without materializing d_P.

A partition of the m + m' legs of a hom-tensor splits into

    S-blocks  inside the domain legs      -> summed over a diagonal
    T-blocks  meeting both sides          -> transferred by indexing
    B-blocks  inside the codomain legs    -> broadcast along a diagonal

apply_fast permutes the input so the S legs then the T' legs are contiguous,
sums over all S diagonals in one pass (n^a terms per output entry for
a S-blocks, instead of the n^{|S|} of a dense contraction), reads the
T' diagonals into a tensor with one axis per T-block, writes that tensor
into the zero-filled output along the T'' and B diagonals, and finally puts
the output legs back in order. Only the sums do arithmetic.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from .basis import diagram_basis_dense
from .config import PEQConfig, resolve
from .errors import BasisIndexError, InputDomainError
from .partitions import SetPartition
from .permutations import invert_permutation
from .tensor import DenseTensor, OpCounter, contract

logger = logging.getLogger(__name__)

Legs = Tuple[int, ...]


@dataclass(frozen=True)
class BlockPlan:
    """S/T/B classification of a partition of the m + m' hom-tensor legs.

    Attributes
    ----------
    partition : SetPartition
        Partition of {0..m+m'-1}; legs 0..m-1 pair with the input.
    m, mprime : int
        Domain and codomain orders.
    n : int
        Base dimension.
    s_blocks : tuple of leg tuples
        Blocks inside the domain (domain leg numbers).
    t_blocks : tuple of (T', T'') pairs
        Straddling blocks; T' as domain legs, T'' as codomain legs (0-based
        within the codomain).
    b_blocks : tuple of leg tuples
        Blocks inside the codomain (0-based within the codomain).
    input_perm : tuple of int
        Domain legs in processing order: S legs, then T' legs.
    output_perm : tuple of int
        Codomain legs in writing order: T'' legs, then B legs.
    """
    partition: SetPartition
    m: int
    mprime: int
    n: int
    s_blocks: Tuple[Legs, ...]
    t_blocks: Tuple[Tuple[Legs, Legs], ...]
    b_blocks: Tuple[Legs, ...]
    input_perm: Legs
    output_perm: Legs

    @property
    def counts(self) -> Tuple[int, int, int]:
        """(a, b, c): numbers of S, T and B blocks."""
        return len(self.s_blocks), len(self.t_blocks), len(self.b_blocks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "partition": str(self.partition),
            "m": self.m,
            "mprime": self.mprime,
            "n": self.n,
            "s_blocks": [list(b) for b in self.s_blocks],
            "t_blocks": [[list(tp), list(tpp)] for tp, tpp in self.t_blocks],
            "b_blocks": [list(b) for b in self.b_blocks],
            "input_perm": list(self.input_perm),
            "output_perm": list(self.output_perm),
        }


@dataclass
class OpCount:
    """Scalar operation counts of the fast path against the dense oracle."""
    fast_muladds: int
    dense_muladds: int
    fast_copies: int

    def to_dict(self) -> Dict[str, int]:
        return {
            "fast_muladds": self.fast_muladds,
            "dense_muladds": self.dense_muladds,
            "fast_copies": self.fast_copies,
        }


@lru_cache(maxsize=None)
def _plan(p: SetPartition, m: int, mprime: int, n: int) -> BlockPlan:
    s_blocks: List[Legs] = []
    t_blocks: List[Tuple[Legs, Legs]] = []
    b_blocks: List[Legs] = []
    for block in p.blocks:
        domain = tuple(leg for leg in block if leg < m)
        codomain = tuple(leg - m for leg in block if leg >= m)
        if domain and codomain:
            t_blocks.append((domain, codomain))
        elif domain:
            s_blocks.append(domain)
        else:
            b_blocks.append(codomain)
    input_perm = tuple(leg for b in s_blocks for leg in b) + tuple(leg for tp, _ in t_blocks for leg in tp)
    output_perm = tuple(leg for _, tpp in t_blocks for leg in tpp) + tuple(leg for b in b_blocks for leg in b)
    result = BlockPlan(
        partition=p,
        m=m,
        mprime=mprime,
        n=n,
        s_blocks=tuple(s_blocks),
        t_blocks=tuple(t_blocks),
        b_blocks=tuple(b_blocks),
        input_perm=input_perm,
        output_perm=output_perm,
    )
    logger.debug(f"plan [{p}] m={m} m'={mprime} n={n}: S/T/B = {result.counts}")
    return result


def plan(p: SetPartition, m: int, mprime: int, n: int) -> BlockPlan:
    """Classify the blocks of ``p`` for application as a map of order m → m'.

    Raises
    ------
    InputDomainError
        If ``p`` does not partition m + m' legs.
    BasisIndexError
        If ``p`` has more than n blocks.
    """
    if m < 0 or mprime < 0 or n < 1:
        raise InputDomainError(f"need m, m' >= 0 and n >= 1, got m={m}, m'={mprime}, n={n}")
    if p.l != m + mprime:
        raise InputDomainError(f"partition [{p}] has {p.l} legs, expected m + m' = {m + mprime}")
    if p.num_blocks > n:
        raise BasisIndexError(p, n)
    return _plan(p, m, mprime, n)


def _check_input(bp: BlockPlan, v: DenseTensor):
    if v.n != bp.n or v.order != bp.m:
        raise InputDomainError(
            f"plan expects an order-{bp.m} tensor over n={bp.n}, got order {v.order} over n={v.n}"
        )


def apply_fast(bp: BlockPlan, v: DenseTensor, counter: Optional[OpCounter] = None) -> DenseTensor:
    """Apply d_P by diagonal sums, transfer and broadcast.

    Equals ``apply_dense_oracle`` on every input.
    """
    _check_input(bp, v)
    field, n = v.field, bp.n
    n_t, n_b = len(bp.t_blocks), len(bp.b_blocks)
    field.check_bound(field.max_abs(v.data) * n ** len(bp.s_blocks), "apply_fast")
    idx = np.arange(n)

    # sum: leading axes are the S legs in block order, one diagonal axis per block
    x = np.transpose(v.data, bp.input_perm)
    n_s = len(bp.s_blocks)
    if n_s:
        s_grids = [idx.reshape(tuple(n if a == i else 1 for a in range(n_s))) for i in range(n_s)]
        x = x[tuple(s_grids[i] for i, block in enumerate(bp.s_blocks) for _ in block)]
        x = np.asarray(x.sum(axis=tuple(range(n_s))), dtype=field.dtype)
        if counter is not None:
            counter.adds += n ** n_s * x.size

    # transfer: one axis per T-block, then unit axes for the B-blocks
    k = n_t + n_b
    grids = [idx.reshape(tuple(n if a == i else 1 for a in range(k))) for i in range(k)]
    if n_t:
        y = x[tuple(grids[i] for i, (tp, _) in enumerate(bp.t_blocks) for _ in tp)]
    else:
        y = x.reshape((1,) * k)

    if bp.mprime == 0:
        return DenseTensor(np.asarray(y, dtype=field.dtype).reshape(()), n, field)

    # broadcast: write along the T'' and B diagonals of a zero output
    z = field.zeros((n,) * bp.mprime)
    targets = tuple(grids[i] for i, (_, tpp) in enumerate(bp.t_blocks) for _ in tpp)
    targets += tuple(grids[n_t + j] for j, block in enumerate(bp.b_blocks) for _ in block)
    z[targets] = y
    if counter is not None:
        counter.copies += n ** k
    return DenseTensor(np.transpose(z, invert_permutation(bp.output_perm)), n, field)


def apply_dense_oracle(p: SetPartition, m: int, mprime: int, n: int, v: DenseTensor,
                       config: Optional[PEQConfig] = None,
                       counter: Optional[OpCounter] = None) -> DenseTensor:
    """Materialize d_P and contract its first m legs with the input legs in order."""
    if p.l != m + mprime:
        raise InputDomainError(f"partition [{p}] has {p.l} legs, expected m + m' = {m + mprime}")
    if v.n != n or v.order != m:
        raise InputDomainError(f"expected an order-{m} tensor over n={n}, got order {v.order} over n={v.n}")
    resolve(config).ensure_capacity(f"dense oracle d[{p}]", n ** (m + mprime))
    d = diagram_basis_dense(p, n, v.field, config)
    return contract(v, d, [(k, k) for k in range(m)], counter)


def op_count(bp: BlockPlan, n: Optional[int] = None) -> OpCount:
    """Operation counts of ``apply_fast`` and the dense oracle for this block structure.

    ``n`` defaults to the plan's own base dimension.
    """
    n = bp.n if n is None else n
    # n^a terms for each of the n^(m - |S legs|) summed entries
    a = len(bp.s_blocks)
    s_legs = sum(len(block) for block in bp.s_blocks)
    adds = n ** (a + bp.m - s_legs) if a else 0
    n_t, n_b = len(bp.t_blocks), len(bp.b_blocks)
    copies = n ** (n_t + n_b) if bp.mprime else 0
    return OpCount(fast_muladds=adds, dense_muladds=n ** (bp.m + bp.mprime), fast_copies=copies)


def apply_many(bp: BlockPlan, inputs: Sequence[DenseTensor],
               config: Optional[PEQConfig] = None) -> List[DenseTensor]:
    """apply_fast over a batch, in input order; threaded when config.workers > 1."""
    config = resolve(config)
    if config.workers == 1 or len(inputs) < 2:
        return [apply_fast(bp, v) for v in inputs]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(lambda v: apply_fast(bp, v), inputs))
