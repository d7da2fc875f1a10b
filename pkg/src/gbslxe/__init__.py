"""Linear cross-entropy scoring for Gaussian boson sampling.

Exact photon-count probabilities of Gaussian models, per-sector linear
cross-entropy, sample-based score estimation, and the exact closed form of
the Haar-averaged ideal score, each backed by independent brute-force
oracles.
"""

__version__ = "0.1.0"

from .distributions import (
    SampleSet,
    count_patterns,
    enumerate_patterns,
    probability,
    q_series,
    sample_bruteforce,
    total_photon_probability,
    vacuum_probability,
)
from .hafnian import hafnian, hafnian_bruteforce, permanent, reduce_matrix
from .idealscore import (
    c_coefficients,
    ideal_score,
    ideal_score_exact,
    ideal_score_novacuum,
    table_report,
)
from .lxe import (
    ScoreReport,
    lxe_bruteforce,
    lxe_norm_coefficient,
    mc_haar_score,
    score_from_samples,
)
from .models import (
    GbsModel,
    build_general_model,
    build_squeezed_model,
    build_thermal_model,
    haar_unitary,
    model_from_husimi_covariance,
    nearest_unitary,
    validity_check,
)
from .weingarten import (
    asymptotic_weingarten,
    haar_monomial_average,
    mc_monomial_average,
    weingarten,
)

__all__ = [
    "__version__",
    "SampleSet",
    "count_patterns",
    "enumerate_patterns",
    "probability",
    "q_series",
    "sample_bruteforce",
    "total_photon_probability",
    "vacuum_probability",
    "hafnian",
    "hafnian_bruteforce",
    "permanent",
    "reduce_matrix",
    "c_coefficients",
    "ideal_score",
    "ideal_score_exact",
    "ideal_score_novacuum",
    "table_report",
    "ScoreReport",
    "lxe_bruteforce",
    "lxe_norm_coefficient",
    "mc_haar_score",
    "score_from_samples",
    "GbsModel",
    "build_general_model",
    "build_squeezed_model",
    "build_thermal_model",
    "haar_unitary",
    "model_from_husimi_covariance",
    "nearest_unitary",
    "validity_check",
    "asymptotic_weingarten",
    "haar_monomial_average",
    "mc_monomial_average",
    "weingarten",
]
