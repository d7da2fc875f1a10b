"""Weingarten calculus for moments of Haar-random unitaries.

Exact values come from inverting the Gram matrix of permutation operators
(collapsed onto conjugacy classes, solved over the rationals); the leading
large-dimension behaviour is the signed-Catalan product divided by the
appropriate power of the dimension.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .models import _haar_from_rng
from .permutations import (
    Perm,
    cycle_decomposition,
    enumerate_matchers,
    moebius,
    transposition_norm,
)

__all__ = [
    "weingarten",
    "haar_monomial_average",
    "mc_monomial_average",
    "asymptotic_weingarten",
]

MAX_DEGREE = 5


def _cycle_type(mapping: tuple[int, ...]) -> tuple[int, ...]:
    n = len(mapping)
    seen = [False] * n
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = mapping[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def _solve_rational(matrix, rhs):
    """Gaussian elimination over Fractions; matrix is a list of rows."""
    n = len(matrix)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


@lru_cache(maxsize=None)
def _wg_table(n: int, m: int) -> dict[tuple[int, ...], Fraction]:
    """Exact Weingarten values of S_n at dimension m, keyed by cycle type."""
    perms = list(itertools.permutations(range(n)))
    types = sorted({_cycle_type(p) for p in perms}, reverse=True)
    index = {t: i for i, t in enumerate(types)}
    # One orthogonality equation per class representative:
    #   sum_tau m^{cycles(rep^{-1} tau)} wg(type(tau)) = [rep == identity]
    reps = {}
    for p in perms:
        reps.setdefault(_cycle_type(p), p)
    rows = []
    rhs = []
    identity_type = tuple([1] * n)
    for t in types:
        rep = reps[t]
        inv = [0] * n
        for i, j in enumerate(rep):
            inv[j] = i
        row = [Fraction(0)] * len(types)
        for tau in perms:
            composed = tuple(inv[tau[i]] for i in range(n))
            cycles = len(_cycle_type(composed))
            row[index[_cycle_type(tau)]] += Fraction(m) ** cycles
        rows.append(row)
        rhs.append(Fraction(1) if t == identity_type else Fraction(0))
    solution = _solve_rational(rows, rhs)
    return {t: solution[i] for t, i in index.items()}


def weingarten(p: Perm, m: int, n: int | None = None) -> Fraction:
    """Exact Weingarten function of ``p`` at dimension ``m``.

    ``n``, if given, must equal the degree of ``p``.  Degrees up to 5 are
    supported and require ``m >= n`` (the Gram matrix is singular below
    that).
    """
    degree = p.degree
    if n is not None and n != degree:
        raise ValueError("explicit degree disagrees with the permutation")
    if degree < 1 or degree > MAX_DEGREE:
        raise ValueError(f"degree must be between 1 and {MAX_DEGREE}")
    if m < degree:
        raise ValueError("dimension must be at least the degree")
    lengths = tuple(sorted((len(c) for c in cycle_decomposition(p)), reverse=True))
    return _wg_table(degree, m)[lengths]


def haar_monomial_average(j, mu, jp, nu, m: int) -> Fraction:
    """Exact Haar average of prod_a U[j_a, mu_a] * prod_b conj(U[jp_b, nu_b]).

    Vanishes unless the row multisets (j vs jp) and column multisets (mu vs
    nu) agree; otherwise it is the double sum of Weingarten values over the
    row and column matchers.
    """
    j, mu, jp, nu = tuple(j), tuple(mu), tuple(jp), tuple(nu)
    if len(j) != len(jp) or len(mu) != len(nu):
        raise ValueError("conjugated block must have the same degree")
    if len(j) != len(mu):
        raise ValueError("row and column index lists must have equal length")
    n = len(j)
    if n == 0:
        return Fraction(1)
    if n > MAX_DEGREE:
        raise ValueError(f"degree must be at most {MAX_DEGREE}")
    total = Fraction(0)
    row_matchers = list(enumerate_matchers(j, jp))
    if not row_matchers:
        return Fraction(0)
    col_matchers = list(enumerate_matchers(mu, nu))
    if not col_matchers:
        return Fraction(0)
    table = _wg_table(n, m)
    for rho in row_matchers:
        rho_inv = rho.inverse()
        for tau in col_matchers:
            composed = rho_inv.compose(tau)
            lengths = tuple(
                sorted((len(c) for c in cycle_decomposition(composed)), reverse=True)
            )
            total += table[lengths]
    return total


def mc_monomial_average(
    j, mu, jp, nu, m: int, trials: int, seed, chunk: int = 200_000
):
    """Empirical Haar average of the same monomial, with a standard error.

    Returns ``(mean, std_error)`` where the error combines both quadratures.
    Deterministic per seed; draws are batched for speed.
    """
    j, mu, jp, nu = tuple(j), tuple(mu), tuple(jp), tuple(nu)
    # Unbalanced monomials (unequal U and U* counts) are allowed here: the
    # empirical mean is a direct oracle and such means vanish by symmetry.
    if len(j) != len(mu) or len(jp) != len(nu):
        raise ValueError("row and column index lists must pair up")
    if trials < 2:
        raise ValueError("need at least two trials")
    rng = np.random.default_rng(seed)
    total = 0.0 + 0.0j
    total_sq = 0.0
    done = 0
    while done < trials:
        batch = min(chunk, trials - done)
        us = _haar_from_rng(m, batch, rng)
        vals = np.ones(batch, dtype=complex)
        for a in range(len(j)):
            vals *= us[:, j[a], mu[a]]
        for b in range(len(jp)):
            vals *= us[:, jp[b], nu[b]].conj()
        total += vals.sum()
        total_sq += float((np.abs(vals) ** 2).sum())
        done += batch
    mean = total / trials
    var = (total_sq / trials - abs(mean) ** 2) * trials / (trials - 1)
    std_error = float(np.sqrt(max(var, 0.0) / trials))
    return complex(mean), std_error


def asymptotic_weingarten(p: Perm, m: int) -> float:
    """Leading large-``m`` behaviour: moebius(p) / m^(degree + |p|).

    ``|p|`` is the transposition norm; the exact value differs from this by
    a relative correction of order m^{-2}.
    """
    return float(moebius(p)) / m ** (p.degree + transposition_norm(p))
