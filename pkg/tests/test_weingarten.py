"""Exact Haar-unitary moment calculus against its Monte Carlo oracle."""

import itertools
from fractions import Fraction

import pytest

from gbslxe.permutations import Perm, from_cycles, identity
from gbslxe.weingarten import (
    asymptotic_weingarten,
    haar_monomial_average,
    mc_monomial_average,
    weingarten,
)


def all_perms(n):
    return [Perm(p) for p in itertools.permutations(range(n))]


def cycles_of(p):
    n = p.degree
    seen = [False] * n
    count = 0
    for s in range(n):
        if not seen[s]:
            count += 1
            x = s
            while not seen[x]:
                seen[x] = True
                x = p.map[x]
    return count


@pytest.mark.parametrize("m", [1, 2, 5, 9])
def test_degree_one(m):
    assert weingarten(identity(1), m) == Fraction(1, m)


@pytest.mark.parametrize("m", [2, 3, 7, 20])
def test_degree_two_closed_forms(m):
    assert weingarten(identity(2), m) == Fraction(1, m**2 - 1)
    assert weingarten(from_cycles(2, [(0, 1)]), m) == Fraction(-1, m * (m**2 - 1))


@pytest.mark.parametrize("m", [3, 4, 11])
def test_degree_three_closed_forms(m):
    denom = m * (m**2 - 1) * (m**2 - 4)
    assert weingarten(identity(3), m) == Fraction(m**2 - 2, denom)
    assert weingarten(from_cycles(3, [(0, 1)]), m) == Fraction(-1, (m**2 - 1) * (m**2 - 4))
    assert weingarten(from_cycles(3, [(0, 1, 2)]), m) == Fraction(2, denom)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("extra", [0, 3])
def test_orthogonality(n, extra):
    # sum_tau M^{cycles(sigma^-1 tau)} Wg(tau) = [sigma == identity], every sigma
    m = n + extra
    perms = all_perms(n)
    table = {p: weingarten(p, m) for p in perms}
    for sigma in perms:
        inv = sigma.inverse()
        acc = sum(
            Fraction(m) ** cycles_of(inv * tau) * table[tau] for tau in perms
        )
        assert acc == (1 if sigma == identity(n) else 0)


def test_class_function():
    transpositions = [from_cycles(3, [(i, j)]) for i, j in [(0, 1), (0, 2), (1, 2)]]
    vals = {weingarten(t, 5) for t in transpositions}
    assert len(vals) == 1
    p = from_cycles(4, [(0, 1, 2)])
    for h in all_perms(4)[::5]:
        assert weingarten(h.inverse() * p * h, 6) == weingarten(p, 6)


def test_weingarten_validation():
    with pytest.raises(ValueError):
        weingarten(identity(6), 10)  # degree above the cap
    with pytest.raises(ValueError):
        weingarten(identity(3), 2)  # dimension below the degree
    with pytest.raises(ValueError):
        weingarten(identity(2), 5, n=3)


# ---------------------------------------------------------------------------
# monomial averages


def test_monomial_degree_one():
    for m in (1, 2, 6):
        assert haar_monomial_average((0,), (0,), (0,), (0,), m) == Fraction(1, m)


def test_monomial_mismatch_vanishes():
    assert haar_monomial_average((0, 1), (0, 0), (0, 2), (0, 0), 5) == 0
    assert haar_monomial_average((0, 1), (0, 0), (0, 1), (0, 1), 5) == 0


def test_monomial_degree_two_values():
    m = 5
    # E|U_00|^4 = 2/(M(M+1))
    assert haar_monomial_average((0, 0), (0, 0), (0, 0), (0, 0), m) == Fraction(
        2, m * (m + 1)
    )
    # E[U_00 U_11 U*_01 U*_10] = -1/(M(M^2-1))
    assert haar_monomial_average((0, 1), (0, 1), (0, 1), (1, 0), m) == Fraction(
        -1, m * (m**2 - 1)
    )
    # distinct rows and columns: single matcher pair, so just Wg(e)
    assert haar_monomial_average((0, 1), (0, 1), (0, 1), (0, 1), m) == Fraction(
        1, m**2 - 1
    )
    # same column: the extra swap matcher contributes Wg(transposition)
    want = Fraction(1, m**2 - 1) - Fraction(1, m * (m**2 - 1))
    assert haar_monomial_average((0, 1), (2, 2), (0, 1), (2, 2), m) == want
    assert want == Fraction(1, m * (m + 1))


def test_monomial_rows_sum_to_column_normalization():
    # each column of U is a unit vector: sum_j E|U_{j0}|^2 = 1
    m = 4
    total = sum(
        haar_monomial_average((j,), (0,), (j,), (0,), m) for j in range(m)
    )
    assert total == 1


def test_monomial_validation():
    with pytest.raises(ValueError):
        haar_monomial_average((0, 1), (0, 1), (0,), (0,), 5)
    with pytest.raises(ValueError):
        haar_monomial_average((0,) * 6, (0,) * 6, (0,) * 6, (0,) * 6, 8)
    assert haar_monomial_average((), (), (), (), 3) == 1


# ---------------------------------------------------------------------------
# Monte Carlo oracle


def test_mc_matches_exact_values():
    mean, err = mc_monomial_average((0,), (0,), (0,), (0,), 3, 40_000, seed=1)
    assert abs(mean - 1 / 3) <= 3 * err
    exact = float(haar_monomial_average((0, 1), (0, 1), (0, 1), (1, 0), 4))
    mean, err = mc_monomial_average((0, 1), (0, 1), (0, 1), (1, 0), 4, 60_000, seed=2)
    assert abs(mean - exact) <= 3 * err


def test_mc_unbalanced_monomial_averages_to_zero():
    mean, err = mc_monomial_average((0, 1), (0, 1), (0,), (0,), 3, 30_000, seed=5)
    assert abs(mean) <= 3 * err


def test_mc_deterministic_per_seed():
    a = mc_monomial_average((0,), (0,), (0,), (0,), 2, 500, seed=9)
    b = mc_monomial_average((0,), (0,), (0,), (0,), 2, 500, seed=9)
    assert a == b
    with pytest.raises(ValueError):
        mc_monomial_average((0,), (0,), (0,), (0,), 2, 1, seed=0)


# ---------------------------------------------------------------------------
# asymptotics


def test_asymptotic_leading_forms():
    for n in (1, 2, 4):
        assert asymptotic_weingarten(identity(n), 9) == pytest.approx(9.0**-n)
    assert asymptotic_weingarten(from_cycles(2, [(0, 1)]), 10) == pytest.approx(-1e-3)


def test_asymptotic_ratio_tightens_four_fold_per_doubling():
    for p in [identity(2), from_cycles(2, [(0, 1)]), from_cycles(3, [(0, 1, 2)]),
              from_cycles(3, [(0, 1)])]:
        devs = []
        for m in (8, 16, 32):
            exact = float(weingarten(p, m))
            devs.append(abs(exact / asymptotic_weingarten(p, m) - 1.0))
        for a, b in zip(devs, devs[1:]):
            assert 2.5 < a / b < 6.0  # O(M^-2) correction
