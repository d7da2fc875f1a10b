"""Photon-count distributions of Gaussian models.

Single-pattern probabilities go through matrix reductions and hafnians;
whole-sector probabilities always go through the generating-series route
(cycle-index polynomials in the trace powers of X A), which stays cheap at
any mode count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constants import DEFAULT_TABULATION_GUARD, NEGATIVE_PROB_SLACK
from .errors import GuardExceeded
from .hafnian import hafnian, pattern_factorial, reduce_matrix
from .models import GbsModel
from .permutations import constrained_compositions

__all__ = [
    "SampleSet",
    "enumerate_patterns",
    "count_patterns",
    "vacuum_probability",
    "probability",
    "q_series",
    "cycle_index",
    "total_photon_probability",
    "sample_bruteforce",
    "negative_clip_count",
    "reset_clip_count",
]

# Counts patterns whose computed probability fell (within slack) below zero
# and was clipped; exposed so long runs can report numerical behaviour.
_clip_count = 0


def negative_clip_count() -> int:
    return _clip_count


def reset_clip_count() -> None:
    global _clip_count
    _clip_count = 0


def enumerate_patterns(m: int, n: int):
    """Yield all detection patterns of ``n`` photons in ``m`` modes,
    lexicographically ascending."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")

    def rec(prefix, modes_left, photons_left):
        if modes_left == 1:
            yield prefix + (photons_left,)
            return
        for head in range(photons_left + 1):
            yield from rec(prefix + (head,), modes_left - 1, photons_left - head)

    yield from rec((), m, n)


def count_patterns(m: int, n: int) -> int:
    """Number of patterns of ``n`` photons in ``m`` modes: C(m+n-1, n)."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    return math.comb(m + n - 1, n)


def _require_valid(model: GbsModel):
    if not model.g_norm < 1.0:
        raise ValueError(
            f"invalid model: spectral norm of X A is {model.g_norm:.6f} >= 1"
        )


def vacuum_probability(model: GbsModel) -> float:
    """Probability of detecting no photons: sqrt(det(I - X A))."""
    _require_valid(model)
    det = np.linalg.det(np.eye(2 * model.modes) - model.xa)
    if abs(det.imag) > 1e-9 * max(1.0, abs(det)):
        raise ValueError("determinant of I - XA is not real; model is malformed")
    if det.real <= 0:
        raise ValueError("determinant of I - XA is not positive; model is invalid")
    return float(math.sqrt(det.real))


def probability(model: GbsModel, pattern) -> float:
    """Probability of one detection pattern.

    Pr(n) = Pr(0) * haf(A_n) / prod(n_k!), with A_n the pattern reduction of
    the model matrix.  Tiny negative roundoff (within slack) is clipped to
    zero and counted; anything more negative raises.
    """
    global _clip_count
    pattern = tuple(int(x) for x in pattern)
    if len(pattern) != model.modes:
        raise ValueError("pattern length must equal the mode count")
    if any(x < 0 for x in pattern):
        raise ValueError("pattern entries must be non-negative")
    vac = vacuum_probability(model)
    if sum(pattern) == 0:
        return vac
    haf = hafnian(reduce_matrix(model.a_matrix, pattern))
    p = vac * haf.real / pattern_factorial(pattern)
    if abs(haf.imag) * vac > 1e-9 * max(1.0, abs(p)):
        raise ValueError("pattern hafnian has a non-negligible imaginary part")
    if p < 0:
        if p < -NEGATIVE_PROB_SLACK:
            raise ValueError(f"probability {p:.3e} below the negative-roundoff slack")
        _clip_count += 1
        return 0.0
    return float(p)


def cycle_index(y, n: int) -> float:
    """Cycle-index polynomial Z_n of the symmetric group, evaluated at power
    sums ``y`` (``y[a-1]`` is the weight of an a-cycle).

    Z_n = sum over multiplicity vectors k of prod_a y_a^{k_a} / (k_a! a^{k_a}).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1.0
    if len(y) < n:
        raise ValueError(f"need at least {n} power sums, got {len(y)}")
    total = 0.0
    for k in constrained_compositions(n):
        weight = Fraction(1)
        term = 1.0
        for a, ka in enumerate(k):
            if ka == 0:
                continue
            weight /= math.factorial(ka) * (a + 1) ** ka
            term *= y[a] ** ka
        total += float(weight) * term
    return total


def q_series(model: GbsModel, nmax: int) -> np.ndarray:
    """Taylor coefficients q_0..q_nmax of det(I - alpha X A)^{-1/2}.

    Computed as cycle-index polynomials of the half trace powers
    y_l = tr((X A)^l) / 2; q_0 = 1, and q_n * Pr(0) is the probability of
    detecting n photons in total.
    """
    _require_valid(model)
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    xa = model.xa
    y = []
    power = np.eye(2 * model.modes, dtype=complex)
    for _ in range(nmax):
        power = power @ xa
        y.append(np.trace(power).real / 2.0)
    coeffs = np.empty(nmax + 1)
    coeffs[0] = 1.0
    for n in range(1, nmax + 1):
        coeffs[n] = cycle_index(y, n)
    return coeffs


def total_photon_probability(model: GbsModel, n: int) -> float:
    """Probability that the total photon count equals ``n``.

    Always evaluated through the generating series, never by summing the
    (exponentially many) patterns of the sector.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return float(vacuum_probability(model) * q_series(model, n)[n])


@dataclass
class SampleSet:
    """Detection-pattern samples plus bookkeeping.

    ``samples`` holds tuples of per-mode counts; ``meta`` is free-form and is
    persisted alongside the samples.
    """

    modes: int
    samples: list
    meta: dict = field(default_factory=dict)
    unitary_ref: str | None = None

    def __post_init__(self):
        for s in self.samples:
            if len(s) != self.modes:
                raise ValueError("sample length does not match mode count")

    def __len__(self) -> int:
        return len(self.samples)

    def sector_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for s in self.samples:
            t = int(sum(s))
            out[t] = out.get(t, 0) + 1
        return out

    def sector(self, n: int) -> list:
        return [s for s in self.samples if sum(s) == n]


def sample_bruteforce(
    model: GbsModel,
    n: int,
    count: int,
    seed,
    guard: int = DEFAULT_TABULATION_GUARD,
) -> SampleSet:
    """Draw exact samples from the sector-``n`` conditional distribution.

    The whole sector is tabulated (guarded), normalized, and sampled with a
    seeded generator, so the output is exact up to the RNG and reproducible
    per seed.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    size = count_patterns(model.modes, n)
    if size > guard:
        raise GuardExceeded(
            f"sector has {size} patterns, above the tabulation guard {guard}"
        )
    patterns = list(enumerate_patterns(model.modes, n))
    probs = np.array([probability(model, p) for p in patterns])
    total = probs.sum()
    # Hard-zero sectors survive clipping as stray ~1e-17 positives; weights
    # made of pure roundoff must not be handed to the generator.
    if total <= len(patterns) * NEGATIVE_PROB_SLACK:
        raise ValueError(f"model assigns (numerically) zero probability to sector {n}")
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(patterns), size=count, p=probs / total)
    samples = [patterns[i] for i in picks]
    return SampleSet(
        modes=model.modes,
        samples=samples,
        meta={"model_kind": model.kind, "seed": seed, "sector": n},
    )
