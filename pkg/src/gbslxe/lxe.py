"""Linear cross-entropy between photon-count distributions, and its
sample-based and Haar-averaged estimators.

The per-sector cross-entropy of two models is

    LXE(A, B; N) = sum over patterns n with |n| = N of
                   Pr(n|A) Pr(n|B) / (Pr(N|A) Pr(N|B)),

which equals 1/C(M+N-1, N) whenever either model is thermal.  The score of
an experiment is C(M+N-1, N) times its cross-entropy against the ideal
squeezed model.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .constants import DEFAULT_PATTERN_GUARD, NEGATIVE_PROB_SLACK
from .distributions import (
    SampleSet,
    count_patterns,
    enumerate_patterns,
    probability,
    q_series,
    total_photon_probability,
)
from .errors import GuardExceeded
from .models import GbsModel, build_squeezed_model, check_unitary, haar_unitary

__all__ = [
    "ScoreReport",
    "lxe_bruteforce",
    "lxe_norm_coefficient",
    "score_from_samples",
    "mc_haar_score",
    "phase_traces",
]


@dataclass
class ScoreReport:
    """A score value with its uncertainty and enough context to reproduce it."""

    sector: int
    value: float
    std_error: float
    method: str  # "bruteforce" | "samples" | "montecarlo" | "closed_form"
    meta: dict = field(default_factory=dict)


def _sector_probability(model: GbsModel, sector: int, label: str) -> float:
    p = total_photon_probability(model, sector)
    # Series values for hard-zero sectors are roundoff of either sign;
    # dividing by them would silently produce garbage scores.
    if p <= NEGATIVE_PROB_SLACK:
        raise ValueError(
            f"model {label} assigns (numerically) zero probability to sector {sector}"
        )
    return p


def lxe_bruteforce(
    model_a: GbsModel,
    model_b: GbsModel,
    sector: int,
    guard: int = DEFAULT_PATTERN_GUARD,
) -> float:
    """Per-sector linear cross-entropy by full pattern enumeration.

    Symmetric in its two model arguments bit for bit.  The sector size is
    guarded; sector probabilities come from the generating series.
    """
    if model_a.modes != model_b.modes:
        raise ValueError("models must have the same mode count")
    size = count_patterns(model_a.modes, sector)
    if size > guard:
        raise GuardExceeded(f"sector has {size} patterns, above the guard {guard}")
    pa_n = _sector_probability(model_a, sector, "A")
    pb_n = _sector_probability(model_b, sector, "B")
    acc = 0.0
    for pattern in enumerate_patterns(model_a.modes, sector):
        acc += probability(model_a, pattern) * probability(model_b, pattern)
    return acc / (pa_n * pb_n)


def lxe_norm_coefficient(model_a: GbsModel, model_b: GbsModel, sector: int) -> float:
    """Normalization that turns the sector hafnian-product sum into the LXE.

    Equals 1 / (q_N(A) q_N(B)) with q_N the sector coefficients of the two
    generating series; identically Pr(0|A)Pr(0|B) / (Pr(N|A)Pr(N|B)).
    """
    qa = q_series(model_a, sector)[sector]
    qb = q_series(model_b, sector)[sector]
    if abs(qa) < 1e-300 or abs(qb) < 1e-300:
        raise ValueError(f"series coefficient vanishes in sector {sector}")
    return 1.0 / (qa * qb)


def score_from_samples(
    samples: SampleSet,
    unitary,
    r: float,
    num_squeezed: int,
    sector: int,
) -> ScoreReport:
    """Score an experimental sample set against the ideal squeezed model.

    The estimate is  C(M+N-1, N) * [Pr(N|A) * Phat(N)]^{-1} * (1/L) * sum of
    Pr(n_k|A) over the sector-N samples, with L the total sample count and
    Phat(N) the empirical sector frequency.  The standard error comes from
    the sample variance of the per-sample probabilities; it is infinite when
    the sector holds a single sample.
    """
    if sector % 2:
        raise ValueError("the squeezed reference has zero odd-sector probability")
    m = samples.modes
    u = check_unitary(unitary, m)
    model = build_squeezed_model(r, num_squeezed, m, u)
    l_total = len(samples)
    sector_samples = samples.sector(sector)
    l_sector = len(sector_samples)
    if l_sector == 0:
        raise ValueError(f"sample set has no events in sector {sector}")
    phat = l_sector / l_total
    p_n = _sector_probability(model, sector, "A")
    binom = count_patterns(m, sector)
    # Identical patterns share one probability evaluation.
    probs = {p: probability(model, p) for p in set(sector_samples)}
    values = np.array([probs[p] for p in sector_samples])
    mean = float(values.mean())
    scale = binom / (p_n * phat) * (l_sector / l_total)
    value = scale * mean
    if l_sector < 2:
        std_error = math.inf
    else:
        std_error = scale * float(values.std(ddof=1)) / math.sqrt(l_sector)
    return ScoreReport(
        sector=sector,
        value=value,
        std_error=std_error,
        method="samples",
        meta={
            "l_total": l_total,
            "l_sector": l_sector,
            "phat": phat,
            "phat_estimator": "sector_frequency",
            "r": r,
            "num_squeezed": num_squeezed,
            "modes": m,
        },
    )


def _trial_seed(seed, index: int) -> int:
    return int(np.random.SeedSequence([int(seed), int(index)]).generate_state(1)[0])


def mc_haar_score(
    r: float,
    num_squeezed: int,
    modes: int,
    sector: int,
    trials: int = 200,
    seed: int = 0,
    guard: int = DEFAULT_PATTERN_GUARD,
    threads: int = 1,
) -> ScoreReport:
    """Average the ideal model's self-score over Haar-random interferometers.

    Each trial draws its own unitary from a counter-derived seed, so results
    are reproducible and independent of the thread count.
    """
    if trials < 2:
        raise ValueError("need at least two trials")
    binom = count_patterns(modes, sector)

    def one(index: int) -> float:
        u = haar_unitary(modes, _trial_seed(seed, index))
        model = build_squeezed_model(r, num_squeezed, modes, u)
        return binom * lxe_bruteforce(model, model, sector, guard=guard)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = np.array(list(pool.map(one, range(trials))))
    else:
        values = np.array([one(i) for i in range(trials)])
    mean = float(values.mean())
    std_error = float(values.std(ddof=1)) / math.sqrt(trials)
    return ScoreReport(
        sector=sector,
        value=mean,
        std_error=std_error,
        method="montecarlo",
        meta={
            "trials": trials,
            "seed": seed,
            "modes": modes,
            "num_squeezed": num_squeezed,
            "r": r,
            "threads": threads,
        },
    )


def phase_traces(unitary, num_squeezed: int, phases, count: int) -> np.ndarray:
    """Half trace powers of the phase-dressed squeezing kernel.

    With D = diag(exp(i*phases)) and V = U Z U^T (Z projecting onto the
    squeezed modes), returns the array of tr[(D^2 V D^2 V*)^k] / 2 for
    k = 1..count.
    """
    u = check_unitary(unitary)
    m = u.shape[0]
    if not 0 <= num_squeezed <= m:
        raise ValueError("need 0 <= num_squeezed <= modes")
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (m,):
        raise ValueError("need one phase per mode")
    zeta = np.zeros((m, m))
    zeta[:num_squeezed, :num_squeezed] = np.eye(num_squeezed)
    v = u @ zeta @ u.T
    d2 = np.diag(np.exp(2j * phases))
    kernel = d2 @ v @ d2 @ v.conj()
    out = np.empty(count, dtype=complex)
    power = np.eye(m, dtype=complex)
    for k in range(count):
        power = power @ kernel
        out[k] = np.trace(power) / 2.0
    return out
