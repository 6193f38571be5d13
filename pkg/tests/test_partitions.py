from itertools import permutations, product

import numpy as np
import pytest

from peq.errors import InputDomainError
from peq.partitions import (
    SetPartition,
    coarsenings,
    count_partitions,
    enumerate_partitions,
    partition_of_tuple,
    refines,
    zeta_and_moebius,
)


def P(text):
    return SetPartition.parse(text)


class TestSetPartition:
    def test_parse_and_str(self):
        p = P("0 0 1 2")
        assert p.rgs == (0, 0, 1, 2)
        assert str(p) == "0 0 1 2"
        assert p.num_blocks == 3
        assert p.blocks == ((0, 1), (2,), (3,))
        assert p.block_sizes == (2, 1, 1)

    @pytest.mark.parametrize("text", ["1 0", "0 2", "0 1 3", "0 -1", "a b", "0,1", "0, 0"])
    def test_rejects_non_canonical(self, text):
        with pytest.raises(InputDomainError):
            P(text)

    def test_empty_partition(self):
        p = P("")
        assert p.l == 0
        assert p.num_blocks == 0
        assert p.blocks == ()

    def test_from_labels_is_idempotent(self):
        p = SetPartition.from_labels(["x", "y", "x", "z"])
        assert p == P("0 1 0 2")
        assert SetPartition.from_labels(p.rgs) == p
        assert SetPartition.from_labels([7, 3, 7, 1]) == p

    def test_from_blocks(self):
        assert SetPartition.from_blocks([[2, 0], [1]]) == P("0 1 0")
        with pytest.raises(InputDomainError):
            SetPartition.from_blocks([[0, 1], [1]])
        with pytest.raises(InputDomainError):
            SetPartition.from_blocks([[0], [2]])

    def test_order_is_rgs_lexicographic(self):
        assert P("0 0") < P("0 1")
        assert sorted([P("0 1 1"), P("0 0 1"), P("0 1 0")]) == [P("0 0 1"), P("0 1 0"), P("0 1 1")]


class TestPartitionOfTuple:
    @pytest.mark.parametrize("t, expected", [
        ((1, 1), "0 0"),
        ((1, 2), "0 1"),
        ((2, 1, 2), "0 1 0"),
    ])
    def test_examples(self, t, expected):
        assert partition_of_tuple(t) == P(expected)

    def test_out_of_range(self):
        with pytest.raises(InputDomainError):
            partition_of_tuple((0, 1))
        with pytest.raises(InputDomainError):
            partition_of_tuple((1, 4), n=3)
        with pytest.raises(InputDomainError):
            partition_of_tuple(())

    def test_invariant_under_value_permutation(self, rng):
        n = 4
        for _ in range(50):
            t = tuple(int(x) for x in rng.integers(1, n + 1, size=5))
            sigma = rng.permutation(n) + 1
            moved = tuple(int(sigma[x - 1]) for x in t)
            assert partition_of_tuple(moved, n) == partition_of_tuple(t, n)

    @pytest.mark.parametrize("l", [1, 2, 3, 4])
    def test_surjective_when_n_at_least_l(self, l):
        n = l
        hit = {partition_of_tuple(t, n) for t in product(range(1, n + 1), repeat=l)}
        assert sorted(hit) == enumerate_partitions(l, l)
        assert len(hit) == count_partitions(l, l)


class TestEnumerate:
    @pytest.mark.parametrize("l, max_blocks, expected", [(2, 2, 2), (3, 3, 5), (3, 2, 4), (4, 4, 15)])
    def test_counts(self, l, max_blocks, expected):
        parts = enumerate_partitions(l, max_blocks)
        assert len(parts) == expected
        assert count_partitions(l, max_blocks) == expected

    def test_small_lists(self):
        assert [str(p) for p in enumerate_partitions(2, 2)] == ["0 0", "0 1"]
        assert P("0 1 2") not in enumerate_partitions(3, 2)

    def test_sorted_and_unique(self):
        parts = enumerate_partitions(5, 3)
        assert parts == sorted(set(parts))
        assert all(p.num_blocks <= 3 for p in parts)

    def test_bell_numbers(self):
        assert [count_partitions(l, max(l, 1)) for l in range(6)] == [1, 1, 2, 5, 15, 52]
        assert [len(enumerate_partitions(l, max(l, 1))) for l in range(6)] == [1, 1, 2, 5, 15, 52]

    def test_empty_ground_set(self):
        assert enumerate_partitions(0, 3) == [P("")]

    def test_bad_sizes(self):
        with pytest.raises(InputDomainError):
            enumerate_partitions(-1, 2)
        with pytest.raises(InputDomainError):
            count_partitions(2, 0)


def _orbit_count(l, n):
    """Distinct Σn orbits of {0..n-1}^l by brute-force minimum over the group."""
    perms = list(permutations(range(n)))
    orbits = set()
    for t in product(range(n), repeat=l):
        orbits.add(min(tuple(s[x] for x in t) for s in perms))
    return len(orbits)


@pytest.mark.parametrize("l", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_count_matches_orbit_enumeration(l, n):
    assert count_partitions(l, n) == _orbit_count(l, n)


class TestRefinement:
    def test_examples(self):
        assert refines(P("0 1"), P("0 0"))
        assert not refines(P("0 0"), P("0 1"))
        with pytest.raises(InputDomainError):
            refines(P("0 1"), P("0 1 2"))

    @pytest.mark.parametrize("l", [1, 2, 3, 4, 5])
    def test_partial_order(self, l):
        parts = enumerate_partitions(l, l)
        rel = {(a, b): refines(a, b) for a in parts for b in parts}
        for a in parts:
            assert rel[a, a]
        for a in parts:
            for b in parts:
                if a != b:
                    assert not (rel[a, b] and rel[b, a])
        for a in parts:
            for b in parts:
                if not rel[a, b]:
                    continue
                for c in parts:
                    if rel[b, c]:
                        assert rel[a, c]

    def test_coarsenings(self):
        assert coarsenings(P("0 1"), 2) == [P("0 0"), P("0 1")]
        assert coarsenings(P("0 0"), 5) == [P("0 0")]
        assert coarsenings(P("0 1 2"), 3) == enumerate_partitions(3, 3)
        assert coarsenings(P("0 1 2"), 2) == enumerate_partitions(3, 2)

    def test_coarsenings_are_exactly_the_coarser_partitions(self):
        parts = enumerate_partitions(4, 3)
        for p in parts:
            assert coarsenings(p, 3) == [q for q in parts if refines(p, q)]


class TestZetaMoebius:
    def test_l2(self):
        zeta, moebius = zeta_and_moebius(2, 2)
        assert zeta.tolist() == [[1, 0], [1, 1]]
        assert moebius.tolist() == [[1, 0], [-1, 1]]

    def test_l1(self):
        zeta, moebius = zeta_and_moebius(1, 1)
        assert zeta.tolist() == [[1]]
        assert moebius.tolist() == [[1]]

    @pytest.mark.parametrize("l, max_blocks", [(3, 3), (4, 2), (4, 4), (5, 3), (5, 5)])
    def test_inverse(self, l, max_blocks):
        zeta, moebius = zeta_and_moebius(l, max_blocks)
        assert zeta.shape == (count_partitions(l, max_blocks),) * 2
        assert np.array_equal(zeta @ moebius, np.eye(len(zeta), dtype=np.int64))
        assert moebius.dtype == np.int64

    @pytest.mark.parametrize("l", [3, 4])
    def test_unitriangular_by_block_count(self, l):
        parts = enumerate_partitions(l, l)
        zeta, _ = zeta_and_moebius(l, l)
        # coarser partitions first: Z[p, q] != 0 only when q comes no later than p
        order = sorted(range(len(parts)), key=lambda i: (parts[i].num_blocks, parts[i].rgs))
        z = zeta[np.ix_(order, order)]
        assert np.array_equal(z, np.tril(z))
        assert (np.diag(z) == 1).all()

    def test_returns_copies(self):
        zeta, _ = zeta_and_moebius(2, 2)
        zeta[0, 0] = 7
        assert zeta_and_moebius(2, 2)[0][0, 0] == 1
