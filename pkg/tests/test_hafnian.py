import math

import numpy as np
import pytest

from gbslxe.hafnian import (
    hafnian,
    hafnian_bruteforce,
    pattern_factorial,
    permanent,
    permanent_bruteforce,
    reduce_matrix,
)


def random_symmetric(rng, dim):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return z + z.T


def double_fact(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def test_single_pair():
    b = 0.7 - 0.2j
    o = np.array([[0, b], [b, 0]])
    assert hafnian(o) == pytest.approx(b)
    assert hafnian_bruteforce(o) == pytest.approx(b)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_all_ones_counts_matchings(m):
    o = np.ones((2 * m, 2 * m))
    assert hafnian(o) == pytest.approx(double_fact(2 * m - 1))


def test_empty_matrix_is_one():
    o = np.zeros((0, 0))
    assert hafnian(o) == 1
    assert hafnian_bruteforce(o) == 1
    assert permanent(np.zeros((0, 0))) == 1


def test_input_validation():
    with pytest.raises(ValueError):
        hafnian(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        hafnian(np.zeros((2, 4)))
    skew = np.array([[0.0, 1.0], [-1.0, 0.0]])
    with pytest.raises(ValueError):
        hafnian(skew)
    with pytest.raises(ValueError):
        permanent(np.zeros((2, 3)))


@pytest.mark.parametrize("dim", [4, 6, 8, 10, 12])
def test_fast_path_matches_matching_enumeration(dim):
    rng = np.random.default_rng(17 + dim)
    for _ in range(3):
        o = random_symmetric(rng, dim)
        fast = hafnian(o)
        brute = hafnian_bruteforce(o)
        assert abs(fast - brute) <= 1e-9 * max(1.0, abs(brute))


def test_diagonal_congruence():
    # haf[D O D] = prod(d) * haf[O]
    rng = np.random.default_rng(5)
    for dim in (4, 6, 8, 10):
        o = random_symmetric(rng, dim)
        d = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        dod = d[:, None] * o * d[None, :]
        lhs = hafnian(dod)
        rhs = np.prod(d) * hafnian(o)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_bipartite_block_reduces_to_permanent(n):
    rng = np.random.default_rng(n)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    o = np.zeros((2 * n, 2 * n), dtype=complex)
    o[:n, n:] = g
    o[n:, :n] = g.T
    lhs = hafnian(o)
    rhs = permanent(g)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


def test_scaling():
    rng = np.random.default_rng(2)
    o = random_symmetric(rng, 8)
    alpha = 1.3 - 0.4j
    assert hafnian(alpha * o) == pytest.approx(alpha**4 * hafnian(o), rel=1e-12)


# ---------------------------------------------------------------------------
# permanents


def test_permanent_identity_and_ones():
    for n in (1, 2, 3, 5):
        assert permanent(np.eye(n)) == pytest.approx(1.0)
        assert permanent(np.ones((n, n))) == pytest.approx(math.factorial(n))


def test_permanent_of_block_ones():
    # perm of a direct sum of all-ones blocks is the product of factorials
    sizes = (1, 2, 3)
    dim = sum(sizes)
    g = np.zeros((dim, dim))
    at = 0
    for s in sizes:
        g[at : at + s, at : at + s] = 1.0
        at += s
    want = math.prod(math.factorial(s) for s in sizes)
    assert permanent(g) == pytest.approx(want)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_permanent_matches_permutation_sum(n):
    rng = np.random.default_rng(100 + n)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    fast = permanent(g)
    brute = permanent_bruteforce(g)
    assert abs(fast - brute) <= 1e-9 * max(1.0, abs(brute))


# ---------------------------------------------------------------------------
# pattern reduction


def test_reduce_matrix_repetition_order():
    m = 2
    a = np.arange(16).reshape(4, 4) * 1.0
    out = reduce_matrix(a, (1, 2))
    idx = [0, 1, 1, 2, 3, 3]
    assert np.array_equal(out, a[np.ix_(idx, idx)])


def test_reduce_matrix_all_ones_is_identity_reindexing():
    rng = np.random.default_rng(0)
    a = random_symmetric(rng, 6)
    assert np.array_equal(reduce_matrix(a, (1, 1, 1)), a)


def test_reduce_matrix_validation():
    a = np.zeros((4, 4))
    with pytest.raises(ValueError):
        reduce_matrix(a, (1, 2, 3))
    with pytest.raises(ValueError):
        reduce_matrix(a, (0, 0))
    with pytest.raises(ValueError):
        reduce_matrix(a, (-1, 2))
    with pytest.raises(ValueError):
        reduce_matrix(a, (0.5, 1))
    with pytest.raises(ValueError):
        reduce_matrix(np.zeros((3, 3)), (1,))


def test_reduction_commutes_with_diagonal_dressing():
    # (W A W)_n == Wbar_n A_n Wbar_n, as a pure indexing identity
    rng = np.random.default_rng(9)
    for _ in range(50):
        m = int(rng.integers(2, 5))
        a = random_symmetric(rng, 2 * m)
        w = np.exp(1j * rng.uniform(0, 2 * np.pi, 2 * m))
        pattern = rng.integers(0, 3, m)
        if pattern.sum() == 0:
            pattern[0] = 1
        lhs = reduce_matrix(w[:, None] * a * w[None, :], pattern)
        wn = reduce_matrix(np.diag(w), pattern).diagonal()
        rhs = wn[:, None] * reduce_matrix(a, pattern) * wn[None, :]
        assert np.array_equal(lhs, rhs)


def test_pattern_factorial():
    assert pattern_factorial((0, 1, 2, 3)) == 12
    assert pattern_factorial(()) == 1
