"""Hafnians, permanents, and pattern-indexed matrix reductions.

The fast hafnian uses the power-trace subset expansion (inclusion-exclusion
over mode pairs with trace powers of the pair-swapped submatrix); the
brute-force routine sums over perfect matchings and is kept as an
independent oracle.
"""

from __future__ import annotations

import math

import numpy as np

from .constants import SYMMETRY_ATOL

__all__ = [
    "hafnian",
    "hafnian_bruteforce",
    "permanent",
    "permanent_bruteforce",
    "reduce_matrix",
]


def _as_even_symmetric(o):
    o = np.asarray(o, dtype=complex)
    if o.ndim != 2 or o.shape[0] != o.shape[1]:
        raise ValueError("hafnian requires a square matrix")
    if o.shape[0] % 2:
        raise ValueError("hafnian requires even dimension")
    scale = max(1.0, np.abs(o).max()) if o.size else 1.0
    if o.size and np.abs(o - o.T).max() > SYMMETRY_ATOL * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    return o


def hafnian(o) -> complex:
    """Hafnian of an even-dimensional symmetric matrix.

    Parameters
    ----------
    o : (2m, 2m) array_like, symmetric within tolerance.

    Returns
    -------
    complex
        Sum over perfect matchings of the products of matched entries,
        evaluated by the power-trace subset expansion in O(2^m poly(m)).
    """
    o = _as_even_symmetric(o)
    m = o.shape[0] // 2
    if m == 0:
        return 1.0 + 0.0j
    total = 0.0 + 0.0j
    for mask in range(1, 2**m):
        pairs = [i for i in range(m) if mask >> i & 1]
        idx = []
        for i in pairs:
            idx.extend((2 * i, 2 * i + 1))
        b = o[np.ix_(idx, idx)]
        # Swap each pair of rows: multiply by the block exchange on the left.
        swap = [i ^ 1 for i in range(len(idx))]
        xb = b[swap, :]
        # Coefficient of x^m in exp(sum_j tr((XB)^j) x^j / (2j)).
        coeff = np.zeros(m + 1, dtype=complex)
        coeff[0] = 1.0
        power = np.eye(len(idx), dtype=complex)
        traces = np.zeros(m + 1, dtype=complex)
        for j in range(1, m + 1):
            power = power @ xb
            traces[j] = np.trace(power)
        for k in range(1, m + 1):
            acc = 0.0 + 0.0j
            for j in range(1, k + 1):
                acc += traces[j] / 2.0 * coeff[k - j]
            coeff[k] = acc / k
        total += (-1) ** (m - len(pairs)) * coeff[m]
    return complex(total)


def hafnian_bruteforce(o) -> complex:
    """Hafnian by literal perfect-matching enumeration ((2m-1)!! terms).

    Exponential; intended as an oracle for dimensions up to about 12.
    """
    o = _as_even_symmetric(o)
    n = o.shape[0]
    if n == 0:
        return 1.0 + 0.0j

    def match(rest):
        if not rest:
            return 1.0 + 0.0j
        first = rest[0]
        acc = 0.0 + 0.0j
        for i in range(1, len(rest)):
            other = rest[i]
            acc += o[first, other] * match(rest[1:i] + rest[i + 1 :])
        return acc

    return complex(match(tuple(range(n))))


def permanent(g) -> complex:
    """Permanent of a square matrix via the subset (Ryser) expansion.

    Gray-code enumeration of column sums keeps the cost at O(2^n n).
    """
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError("permanent requires a square matrix")
    n = g.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    sums = np.zeros(n, dtype=complex)
    total = 0.0 + 0.0j
    size = 0
    prev = 0
    for k in range(1, 2**n):
        gray = k ^ (k >> 1)
        bit = gray ^ prev
        row = bit.bit_length() - 1
        if gray & bit:
            sums += g[row]
            size += 1
        else:
            sums -= g[row]
            size -= 1
        prev = gray
        total += (-1) ** size * np.prod(sums)
    return complex((-1) ** n * total)


def permanent_bruteforce(g) -> complex:
    """Permanent by the defining sum over permutations (n! terms)."""
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError("permanent requires a square matrix")
    n = g.shape[0]
    total = 0.0 + 0.0j
    for sigma in _permutations(n):
        prod = 1.0 + 0.0j
        for i, j in enumerate(sigma):
            prod *= g[i, j]
        total += prod
    return complex(total)


def _permutations(n):
    import itertools

    return itertools.permutations(range(n))


def reduce_matrix(a, pattern) -> np.ndarray:
    """Repeat rows/columns of a doubled-mode matrix according to a pattern.

    For an M-mode matrix of size 2M x 2M and a pattern ``n`` of length M,
    index ``k`` and index ``k + M`` are each repeated ``n_k`` times (dropped
    when ``n_k = 0``).  Output is ordered by ascending mode index with each
    mode's copies contiguous and all first-half indices before second-half
    ones, giving a 2N x 2N matrix for N = sum(n).
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] % 2:
        raise ValueError("expected a square matrix of even dimension")
    m = a.shape[0] // 2
    pattern = list(pattern)
    if len(pattern) != m:
        raise ValueError(f"pattern length {len(pattern)} != mode count {m}")
    if any(int(x) != x or x < 0 for x in pattern):
        raise ValueError("pattern entries must be non-negative integers")
    if sum(pattern) == 0:
        raise ValueError("all-zero pattern has no reduction")
    first = []
    for k, reps in enumerate(pattern):
        first.extend([k] * int(reps))
    idx = first + [k + m for k in first]
    return a[np.ix_(idx, idx)]


def pattern_factorial(pattern) -> int:
    """Product of factorials of the pattern entries."""
    out = 1
    for x in pattern:
        out *= math.factorial(int(x))
    return out
