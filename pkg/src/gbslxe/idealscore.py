"""Closed-form Haar-averaged score of the ideal squeezed model.

The large-mode-number limit of the averaged, rescaled cross-entropy of the
ideal model with itself reduces to exact combinatorics: a weighted count of
permutation matchers classified by the component count of their pairing
graphs.  This module computes those counts exactly, assembles the
polynomial-in-R coefficients, and evaluates the resulting closed form.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import FileFormatError, GuardExceeded
from .permutations import (
    Perm,
    _matcher_maps,
    block_cycle_permutation,
    constrained_compositions,
    coset_type,
    set_partitions,
)

__all__ = [
    "CoefficientTable",
    "TableRow",
    "NoVacuumScore",
    "matcher_component_histogram",
    "composition_weight",
    "c_coefficients",
    "table_report",
    "ideal_score",
    "ideal_score_exact",
    "ideal_score_novacuum",
    "phase_integral_indicator",
    "matching_permutation_count",
    "doubled_index_sum",
    "double_factorial",
    "half_steps_binomial",
]

CACHE_FORMAT = "gbslxe-coefficients"
CACHE_VERSION = 1

DEFAULT_MAX_N = 4


# ---------------------------------------------------------------------------
# matcher component counting


def _component_count(mapping) -> int:
    """Number of components of the pairing graph of a matcher map.

    Edges are the fixed pairs (2t, 2t+1) plus the mapped pairs
    (mapping[2t], mapping[2t+1]); the union of these two perfect matchings
    splits into even cycles, counted by an alternating walk.
    """
    size = len(mapping)
    partner = [0] * size
    for t in range(0, size, 2):
        a, b = mapping[t], mapping[t + 1]
        partner[a] = b
        partner[b] = a
    seen = bytearray(size)
    comps = 0
    for x in range(size):
        if not seen[x]:
            comps += 1
            y = x
            while not seen[y]:
                seen[y] = 1
                z = partner[y]
                seen[z] = 1
                y = z ^ 1
    return comps


def matcher_component_histogram(g, h) -> dict[int, int]:
    """Histogram, over every matcher rho with rho(g) = h, of the component
    count of rho's pairing graph.

    Returns an empty histogram when the multisets differ.  The total count
    is the product of factorials of the value multiplicities.
    """
    if len(g) != len(h):
        raise ValueError("sequences must have equal length")
    if len(g) % 2:
        raise ValueError("pairing graphs need even length")
    hist: dict[int, int] = {}
    for mapping in _matcher_maps(g, h):
        ell = _component_count(mapping)
        hist[ell] = hist.get(ell, 0) + 1
    return hist


def composition_weight(k, l) -> Fraction:
    """Symmetry weight of a composition pair:
    prod_a 1 / (k_a! l_a! (2a)^(k_a + l_a))."""
    length = max(len(k), len(l))
    ka = list(k) + [0] * (length - len(k))
    la = list(l) + [0] * (length - len(l))
    out = Fraction(1)
    for a in range(length):
        out /= (
            math.factorial(ka[a])
            * math.factorial(la[a])
            * (2 * (a + 1)) ** (ka[a] + la[a])
        )
    return out


# ---------------------------------------------------------------------------
# component-count tables


def _component_tables_python(n: int) -> dict:
    """For each composition pair (k, l), the component-count histogram of
    all matchers, totalled over every permutation of the doubled index set.

    Entry [(k, l)][ell] counts matchers whose pairing graph has ``ell``
    components, summed over the (2n)! sequence permutations.
    """
    two_n = 2 * n
    comps = constrained_compositions(n)
    omegas = {k: block_cycle_permutation(k, n) for k in comps}
    j = tuple(range(two_n))
    tables = {}
    sigmas = list(itertools.permutations(range(two_n)))
    for k in comps:
        hk = omegas[k].apply(j)
        for l in comps:
            ol = omegas[l].map
            totals = [0] * (two_n + 1)
            for sig in sigmas:
                g = j + sig
                h = hk + tuple(sig[i] for i in ol)
                for ell, cnt in matcher_component_histogram(g, h).items():
                    totals[ell] += cnt
            tables[(k, l)] = totals
    return tables


_KERNEL = None


def _compiled_kernel():
    """JIT-compiled matcher walker for the large sectors.

    Works directly on the solvable structure of the matcher set: every
    matcher is the base block-rotation map composed with an arbitrary set of
    value-fiber swaps, so the 2^(2n) matchers are enumerated by bitmask.
    """
    global _KERNEL
    if _KERNEL is None:
        from numba import njit

        @njit(cache=True)
        def kernel(sigmas, ok, ol):  # pragma: no cover - thin compiled loop
            count, two_n = sigmas.shape
            four_n = 2 * two_n
            hist = np.zeros(two_n + 1, dtype=np.int64)
            siginv = np.empty(two_n, dtype=np.int64)
            rho0 = np.empty(four_n, dtype=np.int64)
            rho = np.empty(four_n, dtype=np.int64)
            partner = np.empty(four_n, dtype=np.int64)
            stamp = np.zeros(four_n, dtype=np.int64)
            cur = 0
            for a in range(two_n):
                rho0[a] = ok[a]
            for c in range(two_n):
                rho0[two_n + c] = two_n + ol[c]
            for s in range(count):
                for v in range(two_n):
                    siginv[sigmas[s, v]] = v
                for mask in range(1 << two_n):
                    for x in range(four_n):
                        y = rho0[x]
                        if y < two_n:
                            if (mask >> y) & 1:
                                y = two_n + siginv[y]
                        else:
                            v = sigmas[s, y - two_n]
                            if (mask >> v) & 1:
                                y = v
                        rho[x] = y
                    for t in range(two_n):
                        a = rho[2 * t]
                        b = rho[2 * t + 1]
                        partner[a] = b
                        partner[b] = a
                    cur += 1
                    comps = 0
                    for x0 in range(four_n):
                        if stamp[x0] != cur:
                            comps += 1
                            y = x0
                            while stamp[y] != cur:
                                stamp[y] = cur
                                z = partner[y]
                                stamp[z] = cur
                                y = z ^ 1
                    hist[comps] += 1
            return hist

        _KERNEL = kernel
    return _KERNEL


def _component_tables_compiled(n: int) -> dict:
    """Same tables as the plain path, via the compiled matcher walker."""
    kernel = _compiled_kernel()
    two_n = 2 * n
    sigmas = np.array(
        list(itertools.permutations(range(two_n))), dtype=np.int64
    )
    comps = constrained_compositions(n)
    omegas = {
        k: np.array(block_cycle_permutation(k, n).map, dtype=np.int64) for k in comps
    }
    tables = {}
    for k in comps:
        for l in comps:
            hist = kernel(sigmas, omegas[k], omegas[l])
            tables[(k, l)] = [int(x) for x in hist]
    return tables


_TABLE_MEMO: dict[int, dict] = {}


def _estimated_ops(n: int) -> int:
    pairs = len(constrained_compositions(n)) ** 2
    return math.factorial(2 * n) * pairs * 4**n


def _component_tables(n: int, max_n: int, engine: str) -> dict:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise GuardExceeded(
            f"coefficient tables for sector {2 * n} need roughly "
            f"{_estimated_ops(n):.1e} matcher walks; raise max_n to allow this"
        )
    if n in _TABLE_MEMO:
        return _TABLE_MEMO[n]
    if engine == "auto":
        engine = "python" if n <= 3 else "compiled"
    if engine == "python":
        tables = _component_tables_python(n)
    elif engine == "compiled":
        tables = _component_tables_compiled(n)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    _TABLE_MEMO[n] = tables
    return tables


def _cached_tables(n, max_n, engine, cache_path):
    if cache_path is not None:
        entries = _load_cache_entries(cache_path)
        if n in entries:
            _TABLE_MEMO.setdefault(n, entries[n])
            return entries[n]
    tables = _component_tables(n, max_n, engine)
    if cache_path is not None:
        _store_cache_entry(cache_path, n, tables)
    return tables


# ---------------------------------------------------------------------------
# assembly and closed form


@dataclass(frozen=True)
class TableRow:
    """One composition pair: its weight and the matcher count at maximal
    component number."""

    k: tuple
    l: tuple
    weight: Fraction
    count: int

    @property
    def product(self) -> Fraction:
        return self.weight * self.count


@dataclass(frozen=True)
class CoefficientTable:
    """Polynomial coefficients c_1..c_2n of the closed-form score."""

    n: int
    c: dict

    def polynomial(self, r_modes: int) -> Fraction:
        return sum(
            (coeff * Fraction(r_modes) ** ell for ell, coeff in self.c.items()),
            Fraction(0),
        )


@dataclass(frozen=True)
class NoVacuumScore:
    value: Fraction
    conjectured: Fraction
    matches: bool


def c_from_tables(n: int, tables: dict) -> dict:
    """Assemble the c coefficients from raw component-count tables."""
    two_n = 2 * n
    c = {ell: Fraction(0) for ell in range(1, two_n + 1)}
    for (k, l), totals in tables.items():
        weight = composition_weight(k, l)
        for ell in range(1, two_n + 1):
            c[ell] += weight * totals[ell]
    return c


def c_coefficients(
    n: int,
    max_n: int = DEFAULT_MAX_N,
    engine: str = "auto",
    cache_path: str | None = None,
) -> CoefficientTable:
    """Exact polynomial coefficients of the sector-2n closed-form score.

    c_ell = sum over composition pairs (k, l) of weight(k, l) times the
    number of matchers whose pairing graph has ell components, totalled over
    all sequence permutations.  Work beyond ``max_n`` is refused with a cost
    estimate; ``cache_path`` persists the exact tables across runs.
    """
    tables = _cached_tables(n, max_n, engine, cache_path)
    c = c_from_tables(n, tables)
    if c[2 * n] <= 0:
        raise RuntimeError("leading coefficient must be positive")
    if any(coeff < 0 for coeff in c.values()):
        raise RuntimeError("coefficients must be non-negative")
    return CoefficientTable(n=n, c=c)


def table_report(
    n: int,
    max_n: int = DEFAULT_MAX_N,
    engine: str = "auto",
    cache_path: str | None = None,
) -> list[TableRow]:
    """Per-composition-pair weights and maximal-component matcher counts.

    Rows are ordered with the first composition outermost, both in the
    deterministic composition order.
    """
    tables = _cached_tables(n, max_n, engine, cache_path)
    comps = constrained_compositions(n)
    rows = []
    for k in comps:
        for l in comps:
            rows.append(
                TableRow(
                    k=k,
                    l=l,
                    weight=composition_weight(k, l),
                    count=tables[(k, l)][2 * n],
                )
            )
    return rows


def double_factorial(k: int) -> int:
    """k!! with the empty-product convention (-1)!! = 0!! = 1."""
    if k < -1:
        raise ValueError("double factorial needs k >= -1")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def half_steps_binomial(r_modes: int, n: int) -> Fraction:
    """The generalized binomial C(r/2 + n - 1, n) as an exact rational.

    Equals (r + 2n - 2)!! / ((r - 2)!! 2^n n!) for integer r >= 1.
    """
    out = Fraction(1)
    for i in range(n):
        out *= Fraction(r_modes, 2) + i
    return out / math.factorial(n)


def ideal_score_exact(
    n: int,
    num_squeezed: int,
    max_n: int = DEFAULT_MAX_N,
    engine: str = "auto",
    cache_path: str | None = None,
) -> Fraction:
    """Closed-form sector-2n score of the ideal model with ``num_squeezed``
    squeezed input modes, as an exact rational.

    score = 4^n (n!)^2 / (2n)! * [(R-2)!! / (R+2n-2)!!]^2 * sum_ell c_ell R^ell
    """
    if num_squeezed < 1:
        raise ValueError("need at least one squeezed mode")
    table = c_coefficients(n, max_n=max_n, engine=engine, cache_path=cache_path)
    r = num_squeezed
    pref = Fraction(4**n * math.factorial(n) ** 2, math.factorial(2 * n))
    # (r-2)!!/(r+2n-2)!! telescopes to n factors; never build the factorials
    ratio = Fraction(1, math.prod(r + 2 * i for i in range(n))) ** 2
    return pref * ratio * table.polynomial(r)


def ideal_score(
    n: int,
    num_squeezed: int,
    max_n: int = DEFAULT_MAX_N,
    engine: str = "auto",
    cache_path: str | None = None,
) -> float:
    """Float value of :func:`ideal_score_exact`."""
    return float(
        ideal_score_exact(
            n, num_squeezed, max_n=max_n, engine=engine, cache_path=cache_path
        )
    )


def ideal_score_novacuum(
    n: int,
    max_n: int = DEFAULT_MAX_N,
    engine: str = "auto",
    cache_path: str | None = None,
) -> NoVacuumScore:
    """Score in the all-modes-squeezed limit, with the conjectured value.

    The weighted matcher counts at maximal component number are conjectured
    to sum to exactly one, which collapses the score to 4^n (n!)^2 / (2n)!.
    Both the computed value and the conjecture are returned, with a flag.
    """
    rows = table_report(n, max_n=max_n, engine=engine, cache_path=cache_path)
    total = sum((row.product for row in rows), Fraction(0))
    pref = Fraction(4**n * math.factorial(n) ** 2, math.factorial(2 * n))
    value = pref * total
    return NoVacuumScore(value=value, conjectured=pref, matches=value == pref)


# ---------------------------------------------------------------------------
# exact index-sum identities


def matching_permutation_count(h, g) -> int:
    """Number of permutations sigma with g[sigma(a)] == h[a] for all a,
    counted by the defining sum over the symmetric group."""
    if len(h) != len(g):
        raise ValueError("sequences must have equal length")
    m = len(h)
    if m > 8:
        raise ValueError("defining-sum evaluation capped at length 8")
    count = 0
    for sigma in itertools.permutations(range(m)):
        if all(h[a] == g[sigma[a]] for a in range(m)):
            count += 1
    return count


def phase_integral_indicator(j, jp) -> int:
    """Exact 0/1 value of the phase-averaged index-pairing sum.

    Evaluated literally as the set-partition expansion: each partition of the
    positions contributes its matching count weighted by the inverse block
    factorials, gated by within-block equality and across-block distinctness
    of the first index list.  The result is 1 iff the two lists agree as
    multisets.
    """
    if len(j) != len(jp):
        raise ValueError("index lists must have equal length")
    j, jp = tuple(j), tuple(jp)
    total = Fraction(0)
    for part in set_partitions(len(j)):
        ok = True
        rep_values = []
        for block in part.blocks:
            v = j[block[0]]
            if any(j[f] != v for f in block):
                ok = False
                break
            rep_values.append(v)
        if not ok or len(set(rep_values)) != len(rep_values):
            continue
        total += Fraction(matching_permutation_count(jp, j), part.factorial_weight())
    if total not in (0, 1):
        raise RuntimeError(f"indicator evaluated to {total}, expected 0 or 1")
    return int(total)


def doubled_index_sum(p: Perm, r: int) -> int:
    """Count index lists whose doubled form maps to a doubled form under p.

    For ``mu`` ranging over [r]^(d/2) (d the degree of ``p``), doubles each
    entry, applies ``p``, and counts how often the image is again a doubled
    list; the count equals r to the coset-type length of ``p`` and is
    verified before being returned.
    """
    d = p.degree
    if d % 2:
        raise ValueError("permutation degree must be even")
    half = d // 2
    if r < 1:
        raise ValueError("r must be >= 1")
    if r**half > 10**7:
        raise GuardExceeded("index enumeration too large")
    count = 0
    for mu in itertools.product(range(r), repeat=half):
        doubled = tuple(mu[i // 2] for i in range(d))
        image = p.apply(doubled)
        if all(image[2 * t] == image[2 * t + 1] for t in range(half)):
            count += 1
    expected = r ** coset_type(p)[1]
    if count != expected:
        raise RuntimeError(
            f"count {count} disagrees with r^length {expected}; "
            "this identity should be exact"
        )
    return count


# ---------------------------------------------------------------------------
# disk cache for the exact tables


def _load_cache_entries(path) -> dict:
    if not os.path.exists(path):
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"unreadable coefficient cache {path}: {exc}") from exc
    if doc.get("format") != CACHE_FORMAT or doc.get("version") != CACHE_VERSION:
        raise FileFormatError(f"coefficient cache {path} has an unknown schema")
    out = {}
    for key, entry in doc.get("entries", {}).items():
        n = int(key)
        tables = {}
        for item in entry["histograms"]:
            tables[(tuple(item["k"]), tuple(item["l"]))] = [
                int(x) for x in item["totals"]
            ]
        out[n] = tables
    return out


def _store_cache_entry(path, n, tables) -> None:
    entries = _load_cache_entries(path) if os.path.exists(path) else {}
    entries[n] = tables
    doc = {
        "format": CACHE_FORMAT,
        "version": CACHE_VERSION,
        "entries": {
            str(m): {
                "histograms": [
                    {"k": list(k), "l": list(l), "totals": totals}
                    for (k, l), totals in tbl.items()
                ],
                "c": {
                    str(ell): str(coeff)
                    for ell, coeff in c_from_tables(m, tbl).items()
                },
            }
            for m, tbl in entries.items()
        },
    }
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    os.replace(tmp, path)
