"""Exact combinatorics: cycles, coset types, matchers, partitions."""

import itertools
import math
from fractions import Fraction

import pytest

from gbslxe.permutations import (
    Perm,
    adjacent_swap_permutation,
    block_cycle_permutation,
    constrained_compositions,
    coset_type,
    cycle_decomposition,
    enumerate_matchers,
    from_cycles,
    identity,
    is_hyperoctahedral,
    matcher_count,
    moebius,
    set_partitions,
    transposition_norm,
)


def all_perms(m):
    return [Perm(p) for p in itertools.permutations(range(m))]


# ---------------------------------------------------------------------------
# Perm basics


def test_perm_rejects_non_bijections():
    with pytest.raises(ValueError):
        Perm((0, 0, 1))
    with pytest.raises(ValueError):
        Perm((0, 2))


def test_apply_relabels_positions():
    p = Perm((2, 0, 1))
    assert p.apply(("a", "b", "c")) == ("c", "a", "b")
    with pytest.raises(ValueError):
        p.apply((1, 2))


def test_apply_is_a_right_action():
    # applying p then q must equal applying p*q in one step
    seq = tuple("abcdef")
    for p in all_perms(6)[::37]:
        for q in all_perms(6)[::41]:
            assert q.apply(p.apply(seq)) == (p * q).apply(seq)


def test_inverse_and_compose():
    p = Perm((3, 1, 0, 2))
    assert p.compose(p.inverse()) == identity(4)
    assert p.inverse().compose(p) == identity(4)


def test_perms_are_hashable():
    assert len({identity(3), Perm((0, 1, 2)), Perm((1, 0, 2))}) == 2


def test_from_cycles():
    p = from_cycles(5, [(0, 3), (1, 4, 2)])
    assert p.map == (3, 4, 1, 0, 2)
    assert from_cycles(4, []) == identity(4)
    with pytest.raises(ValueError):
        from_cycles(3, [(0, 1), (1, 2)])  # repeated label
    with pytest.raises(ValueError):
        from_cycles(3, [(0, 5)])


def test_cycle_decomposition():
    assert cycle_decomposition(identity(3)) == [(0,), (1,), (2,)]
    p = from_cycles(8, [(0, 1, 2, 3, 4, 5, 6, 7)])
    assert cycle_decomposition(p) == [tuple(range(8))]
    q = from_cycles(5, [(1, 3), (2, 4)])
    assert cycle_decomposition(q) == [(0,), (1, 3), (2, 4)]


# ---------------------------------------------------------------------------
# transposition norm and moebius


def _bfs_transposition_distance(m):
    """Word length over all transpositions, by breadth-first search."""
    gens = [from_cycles(m, [(i, j)]) for i in range(m) for j in range(i + 1, m)]
    dist = {identity(m): 0}
    frontier = [identity(m)]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = p * g
                if q not in dist:
                    dist[q] = dist[p] + 1
                    nxt.append(q)
        frontier = nxt
    return dist


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_transposition_norm_is_minimal_word_length(m):
    dist = _bfs_transposition_distance(m)
    assert len(dist) == math.factorial(m)
    for p, d in dist.items():
        assert transposition_norm(p) == d


@pytest.mark.parametrize("m", [6, 7])
def test_transposition_norm_equals_degree_minus_cycles(m):
    for p in all_perms(m):
        assert transposition_norm(p) == m - len(cycle_decomposition(p))


def test_moebius_values():
    assert moebius(identity(4)) == 1
    assert moebius(from_cycles(4, [(0, 1)])) == -1
    assert moebius(from_cycles(4, [(0, 1, 2)])) == 2
    assert moebius(from_cycles(4, [(0, 1, 2, 3)])) == -5
    # multiplicative over disjoint cycles
    assert moebius(from_cycles(5, [(0, 1), (2, 3, 4)])) == -2
    assert isinstance(moebius(identity(2)), Fraction)


def test_moebius_is_a_class_function():
    for p in all_perms(4):
        for h in all_perms(4)[::5]:
            assert moebius(h.inverse() * p * h) == moebius(p)


# ---------------------------------------------------------------------------
# coset types


def test_coset_type_worked_examples():
    # two pair swaps plus a 4-cycle on the last two pairs: components 2+1+1
    rho = from_cycles(8, [(0, 1), (2, 3), (4, 5, 6, 7)])
    assert coset_type(rho) == ((2, 1, 1), 3)
    # degree-14 example with a fixed point inside a 5-cycle's complement
    sigma = from_cycles(14, [(0, 1), (3, 6, 5, 7, 4), (8, 9, 10, 11, 12, 13)])
    assert coset_type(sigma) == ((3, 2, 1, 1), 4)


def test_coset_type_of_identity_is_all_ones():
    for m in (1, 2, 3, 4):
        parts, length = coset_type(identity(2 * m))
        assert parts == (1,) * m
        assert length == m


def test_coset_type_requires_even_degree():
    with pytest.raises(ValueError):
        coset_type(identity(3))


def test_coset_type_partitions_half_the_degree():
    for p in all_perms(6):
        parts, length = coset_type(p)
        assert sum(parts) == 3
        assert len(parts) == length
        assert parts == tuple(sorted(parts, reverse=True))


def test_coset_type_is_a_double_coset_invariant():
    hyper = [p for p in all_perms(6) if is_hyperoctahedral(p)]
    assert len(hyper) == 48
    sample = all_perms(6)[::61]
    for p in sample:
        for h1 in hyper[::7]:
            for h2 in hyper[::11]:
                assert coset_type(h1 * p * h2) == coset_type(p)


@pytest.mark.parametrize("m,count", [(1, 2), (2, 8), (3, 48)])
def test_hyperoctahedral_count(m, count):
    # the pairing-preserving subgroup of S_{2m} has 2^m m! elements
    found = sum(is_hyperoctahedral(p) for p in all_perms(2 * m))
    assert found == count == 2**m * math.factorial(m)


def test_adjacent_swap_permutation():
    omega = adjacent_swap_permutation(6)
    assert omega.map == (1, 0, 3, 2, 5, 4)
    assert omega * omega == identity(6)
    assert is_hyperoctahedral(omega)
    with pytest.raises(ValueError):
        adjacent_swap_permutation(5)


# ---------------------------------------------------------------------------
# block rotations and compositions


def test_block_cycle_rotates_each_block():
    assert block_cycle_permutation((1,), 1).apply((1, 2)) == (2, 1)
    assert block_cycle_permutation((2, 0), 2).apply((1, 2, 3, 4)) == (2, 1, 4, 3)
    assert block_cycle_permutation((0, 1), 2).apply((1, 2, 3, 4)) == (2, 3, 4, 1)


def test_block_cycle_weight_check():
    with pytest.raises(ValueError):
        block_cycle_permutation((1, 1), 2)  # weight 3, not 2
    with pytest.raises(ValueError):
        block_cycle_permutation((-1, 1), 1)


def test_block_cycle_coset_type_reads_off_the_composition():
    # a rotation block of size 2a is one component of size 2a
    for n in range(1, 5):
        for k in constrained_compositions(n):
            expected = tuple(
                sorted(
                    (a + 1 for a, ka in enumerate(k) for _ in range(ka)),
                    reverse=True,
                )
            )
            parts, length = coset_type(block_cycle_permutation(k, n))
            assert parts == expected
            assert length == sum(k)


def test_constrained_compositions():
    assert constrained_compositions(0) == [()]
    assert constrained_compositions(1) == [(1,)]
    assert constrained_compositions(2) == [(2, 0), (0, 1)]
    assert constrained_compositions(3) == [(3, 0, 0), (1, 1, 0), (0, 0, 1)]
    # one composition per integer partition
    partition_counts = {1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 11}
    for n, expected in partition_counts.items():
        comps = constrained_compositions(n)
        assert len(comps) == expected
        assert len(set(comps)) == expected
        for k in comps:
            assert sum((a + 1) * ka for a, ka in enumerate(k)) == n
    with pytest.raises(ValueError):
        constrained_compositions(-1)


# ---------------------------------------------------------------------------
# set partitions


def test_set_partition_counts_are_bell_numbers():
    bell = [1, 1, 2, 5, 15, 52, 203]
    for n, expected in enumerate(bell):
        assert sum(1 for _ in set_partitions(n)) == expected


def test_set_partitions_cover_the_ground_set():
    for part in set_partitions(4):
        elems = sorted(x for b in part.blocks for x in b)
        assert elems == [0, 1, 2, 3]
        assert part.n == 4


def test_factorial_weight():
    single = next(p for p in set_partitions(4) if len(p.blocks) == 1)
    assert single.factorial_weight() == 24
    finest = next(p for p in set_partitions(4) if len(p.blocks) == 4)
    assert finest.factorial_weight() == 1


# ---------------------------------------------------------------------------
# matchers


def brute_matchers(g, h):
    return [p for p in all_perms(len(g)) if p.apply(g) == h]


def test_matchers_against_symmetric_group_scan():
    cases = [
        ((0, 1, 0, 1), (1, 0, 1, 0)),
        ((0, 0, 1, 1), (0, 1, 0, 1)),
        ((0, 0, 0), (0, 0, 0)),
        ((0, 1, 2), (2, 1, 0)),
        ((0, 0, 1, 1, 2, 2), (2, 2, 1, 1, 0, 0)),
        ((0, 1), (0, 2)),
    ]
    for g, h in cases:
        got = sorted(p.map for p in enumerate_matchers(g, h))
        want = sorted(p.map for p in brute_matchers(g, h))
        assert got == want
        assert matcher_count(g, h) == len(want)


def test_every_matcher_actually_matches():
    g, h = (3, 1, 1, 3, 2), (1, 3, 2, 3, 1)
    matchers = list(enumerate_matchers(g, h))
    assert len(matchers) == matcher_count(g, h) == 4  # 2! * 2! * 1!
    for rho in matchers:
        assert rho.apply(g) == h


def test_matcher_count_is_product_of_multiplicity_factorials():
    assert matcher_count((0, 1, 2), (0, 1, 2)) == 1
    assert matcher_count((0, 0, 1, 1), (1, 1, 0, 0)) == 4
    assert matcher_count((5,) * 4, (5,) * 4) == 24
    assert matcher_count((0, 1), (0, 0)) == 0
    assert list(enumerate_matchers((0, 1), (0, 0))) == []


def test_matcher_length_mismatch():
    with pytest.raises(ValueError):
        matcher_count((0, 1), (0, 1, 2))
