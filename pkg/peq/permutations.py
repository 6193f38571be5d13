"""
Permutations of {0, ..., size-1} stored as tuples: ``perm[i]`` is the image of i.

Used both for the Σₙ action on tensor indices and for rearranging tensor legs.
"""

from typing import Sequence, Tuple

import numpy as np

from .errors import InputDomainError

Permutation = Tuple[int, ...]


def check_permutation(perm: Sequence[int], size: int) -> Permutation:
    """Validate that ``perm`` is a bijection of {0, ..., size-1}."""
    try:
        values = tuple(int(p) for p in perm)
    except (TypeError, ValueError):
        raise InputDomainError(f"permutation entries must be integers: {perm!r}") from None
    if len(values) != size or sorted(values) != list(range(size)):
        raise InputDomainError(f"{list(values)} is not a permutation of 0..{size - 1}")
    return values


def invert_permutation(perm: Sequence[int]) -> Permutation:
    inverse = [0] * len(perm)
    for i, p in enumerate(perm):
        inverse[p] = i
    return tuple(inverse)


def compose_permutations(sigma: Sequence[int], rho: Sequence[int]) -> Permutation:
    """Return σ∘ρ, i.e. i ↦ σ(ρ(i))."""
    if len(sigma) != len(rho):
        raise InputDomainError(f"cannot compose permutations of sizes {len(sigma)} and {len(rho)}")
    return tuple(sigma[r] for r in rho)


def transposition(n: int) -> Permutation:
    """The swap (0 1); identity when n < 2."""
    perm = list(range(n))
    if n >= 2:
        perm[0], perm[1] = 1, 0
    return tuple(perm)


def long_cycle(n: int) -> Permutation:
    """The n-cycle i ↦ i+1 mod n."""
    return tuple((i + 1) % n for i in range(n))


def random_permutation(n: int, rng: np.random.Generator) -> Permutation:
    return tuple(int(x) for x in rng.permutation(n))
