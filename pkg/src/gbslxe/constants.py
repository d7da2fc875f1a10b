"""Shared numeric tolerances and resource-guard defaults.

Every structural check in the package pulls its tolerance from here so the
contract is stated once.
"""

# Block-structure checks on model matrices (V symmetric, Y Hermitian) and
# unitarity of interferometer matrices.
STRUCTURE_ATOL = 1e-10

# Symmetry check on hafnian inputs.
SYMMETRY_ATOL = 1e-12

# Cross-constructor identities on small systems (e.g. covariance round trips).
CROSS_CHECK_ATOL = 1e-12

# Probabilities this far below zero are treated as roundoff and clipped.
NEGATIVE_PROB_SLACK = 1e-12

# Largest sector enumeration a brute-force cross-entropy sum will attempt.
DEFAULT_PATTERN_GUARD = 10**6

# Largest sector tabulation the exact sampler will attempt.
DEFAULT_TABULATION_GUARD = 10**7
