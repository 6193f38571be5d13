"""
Benchmark harness: apply_fast against the dense oracle.

Operation counts are deterministic (op_count, cross-checked against an
instrumented run); wall times are the per-repetition timings, reported as
their minimum.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional
import logging
import time

import numpy as np

from .config import PEQConfig, resolve
from .constants import BENCH_DEFAULT_REPS
from .fastapply import apply_dense_oracle, apply_fast, op_count, plan
from .partitions import SetPartition
from .scalars import ScalarField
from .tensor import DenseTensor, OpCounter

logger = logging.getLogger(__name__)


@dataclass
class BenchResult:
    """Counts and timings for one (partition, m, m', n).

    Attributes
    ----------
    fast_muladds, dense_muladds : int
        Arithmetic operations of the fast path and of the dense oracle.
    fast_copies : int
        Entries written by transfer and broadcast.
    fast_times_ns, dense_times_ns : list of int
        Wall time of every repetition in nanoseconds.
    """
    partition: str
    m: int
    mprime: int
    n: int
    reps: int
    fast_muladds: int
    dense_muladds: int
    fast_copies: int
    fast_times_ns: List[int] = field(default_factory=list)
    dense_times_ns: List[int] = field(default_factory=list)

    @property
    def fast_ns(self) -> int:
        return min(self.fast_times_ns)

    @property
    def dense_ns(self) -> int:
        return min(self.dense_times_ns)

    @property
    def speedup(self) -> float:
        return self.dense_ns / max(self.fast_ns, 1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "partition": self.partition,
            "m": self.m,
            "mprime": self.mprime,
            "n": self.n,
            "reps": self.reps,
            "fast_muladds": self.fast_muladds,
            "dense_muladds": self.dense_muladds,
            "fast_copies": self.fast_copies,
            "fast_ns": self.fast_ns,
            "dense_ns": self.dense_ns,
            "speedup": round(self.speedup, 3),
        }


def _time_ns(func: Callable[[], Any], reps: int) -> List[int]:
    times = []
    for _ in range(reps):
        start = time.perf_counter_ns()
        func()
        times.append(time.perf_counter_ns() - start)
    return times


def run_bench(p: SetPartition, m: int, mprime: int, n: int,
              reps: int = BENCH_DEFAULT_REPS, seed: Optional[int] = None,
              config: Optional[PEQConfig] = None) -> BenchResult:
    """Time apply_fast and apply_dense_oracle on a random float64 input.

    Raises
    ------
    RuntimeError
        If the instrumented operation counts disagree with ``op_count``.
    """
    if reps < 1:
        raise ValueError(f"reps must be positive, got {reps}")
    config = resolve(config)
    bp = plan(p, m, mprime, n)
    counts = op_count(bp)

    rng = np.random.default_rng(config.seed if seed is None else seed)
    v = DenseTensor(rng.standard_normal((n,) * m), n, ScalarField.F64)

    fast_counter, dense_counter = OpCounter(), OpCounter()
    apply_fast(bp, v, fast_counter)
    apply_dense_oracle(p, m, mprime, n, v, config, dense_counter)
    if fast_counter.arithmetic != counts.fast_muladds or dense_counter.arithmetic != counts.dense_muladds:
        raise RuntimeError(
            f"instrumented counts {fast_counter.to_dict()} / {dense_counter.to_dict()} "
            f"disagree with op_count {counts.to_dict()}"
        )

    fast_times = _time_ns(lambda: apply_fast(bp, v), reps)
    dense_times = _time_ns(lambda: apply_dense_oracle(p, m, mprime, n, v, config), reps)
    result = BenchResult(
        partition=str(p),
        m=m,
        mprime=mprime,
        n=n,
        reps=reps,
        fast_muladds=counts.fast_muladds,
        dense_muladds=counts.dense_muladds,
        fast_copies=counts.fast_copies,
        fast_times_ns=fast_times,
        dense_times_ns=dense_times,
    )
    logger.info(
        f"bench [{p}] m={m} m'={mprime} n={n}: fast {result.fast_ns} ns, "
        f"dense {result.dense_ns} ns, speedup {result.speedup:.1f}x"
    )
    return result
