"""Gaussian model matrices for photon-counting experiments.

A model is the 2M x 2M adjacency-style matrix ``A`` of a zero-mean Gaussian
state in the doubled-mode basis,

    A = [[V, Y], [Y*, V*]],   V symmetric, Y Hermitian,

together with its mode count and construction metadata.  The exchange matrix
X (swapping the two halves) enters every probability formula, and validity
of a model is controlled by the spectral norm of X @ A being below one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import STRUCTURE_ATOL

__all__ = [
    "GbsModel",
    "ValidityReport",
    "exchange_matrix",
    "haar_unitary",
    "haar_unitaries",
    "check_unitary",
    "build_squeezed_model",
    "build_thermal_model",
    "build_general_model",
    "model_from_husimi_covariance",
    "husimi_covariance",
    "nearest_unitary",
    "validity_check",
]


def exchange_matrix(m: int) -> np.ndarray:
    """The 2m x 2m block matrix [[0, I], [I, 0]]."""
    x = np.zeros((2 * m, 2 * m))
    x[:m, m:] = np.eye(m)
    x[m:, :m] = np.eye(m)
    return x


@dataclass(frozen=True, eq=False)
class GbsModel:
    """A validated model matrix plus provenance.

    ``kind`` is one of ``"squeezed"``, ``"thermal"``, ``"general"`` or
    ``"custom"``; ``params`` records the construction inputs.  ``g_norm`` is
    the spectral norm of X @ A, computed once at construction; the model is
    physically meaningful only when it is below one.
    """

    a_matrix: np.ndarray
    modes: int
    kind: str
    params: dict = field(default_factory=dict)
    g_norm: float = field(init=False)

    def __post_init__(self):
        a = np.asarray(self.a_matrix, dtype=complex)
        m = self.modes
        if a.shape != (2 * m, 2 * m):
            raise ValueError(f"model matrix must be {2 * m} x {2 * m}, got {a.shape}")
        v = a[:m, :m]
        y = a[:m, m:]
        scale = max(1.0, np.abs(a).max())
        tol = STRUCTURE_ATOL * scale
        if np.abs(v - v.T).max() > tol:
            raise ValueError("upper-left block is not symmetric")
        if np.abs(y - y.conj().T).max() > tol:
            raise ValueError("upper-right block is not Hermitian")
        if np.abs(a[m:, :m] - y.conj()).max() > tol:
            raise ValueError("lower-left block must be the conjugate of the upper-right")
        if np.abs(a[m:, m:] - v.conj()).max() > tol:
            raise ValueError("lower-right block must be the conjugate of the upper-left")
        a.flags.writeable = False
        object.__setattr__(self, "a_matrix", a)
        xa = exchange_matrix(m) @ a
        object.__setattr__(self, "g_norm", float(np.linalg.norm(xa, 2)))

    @property
    def xa(self) -> np.ndarray:
        return exchange_matrix(self.modes) @ self.a_matrix


@dataclass(frozen=True)
class ValidityReport:
    g_norm: float
    valid: bool


def _haar_from_rng(m: int, count: int, rng) -> np.ndarray:
    z = (rng.standard_normal((count, m, m)) + 1j * rng.standard_normal((count, m, m)))
    z /= np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.einsum("...ii->...i", r)
    q = q * (diag / np.abs(diag))[:, None, :]
    return q


def haar_unitaries(m: int, count: int, seed) -> np.ndarray:
    """``count`` independent Haar-distributed m x m unitaries, seeded.

    QR of a complex Gaussian matrix with the R-diagonal phases divided out,
    which makes the factorization unique and the law exactly invariant.
    """
    if m < 1 or count < 0:
        raise ValueError("need m >= 1 and count >= 0")
    rng = np.random.default_rng(seed)
    return _haar_from_rng(m, count, rng)


def haar_unitary(m: int, seed) -> np.ndarray:
    """A single Haar-distributed m x m unitary, deterministic per seed."""
    return haar_unitaries(m, 1, seed)[0]


def check_unitary(u, m: int | None = None) -> np.ndarray:
    """Validate that ``u`` is square (of size ``m`` if given) and unitary."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError("unitary must be a square matrix")
    if m is not None and u.shape[0] != m:
        raise ValueError(f"unitary must be {m} x {m}, got {u.shape}")
    err = np.abs(u @ u.conj().T - np.eye(u.shape[0])).max()
    if err > STRUCTURE_ATOL:
        raise ValueError(f"matrix is not unitary (deviation {err:.2e})")
    return u


def build_squeezed_model(r: float, num_squeezed: int, modes: int, unitary) -> GbsModel:
    """Ideal lossless model: ``num_squeezed`` equally squeezed modes entering
    an interferometer, the rest vacuum.

    ``A = tanh(r) * blockdiag(V, V*)`` with V = U Z U^T and Z the projector
    onto the first ``num_squeezed`` modes.
    """
    if not 1 <= num_squeezed <= modes:
        raise ValueError("need 1 <= num_squeezed <= modes")
    if not (r > 0 and np.isfinite(r)):
        raise ValueError("squeezing parameter must be positive and finite")
    u = check_unitary(unitary, modes)
    zeta = np.zeros((modes, modes))
    zeta[:num_squeezed, :num_squeezed] = np.eye(num_squeezed)
    v = np.tanh(r) * (u @ zeta @ u.T)
    a = np.zeros((2 * modes, 2 * modes), dtype=complex)
    a[:modes, :modes] = v
    a[modes:, modes:] = v.conj()
    return GbsModel(a, modes, "squeezed", {"r": float(r), "num_squeezed": num_squeezed})


def build_thermal_model(nbar: float, modes: int) -> GbsModel:
    """Product of identical thermal modes: A = nbar/(nbar+1) * X."""
    if nbar < 0:
        raise ValueError("mean photon number must be >= 0")
    a = nbar / (nbar + 1.0) * exchange_matrix(modes).astype(complex)
    return GbsModel(a, modes, "thermal", {"nbar": float(nbar)})


def build_general_model(var_x, var_p, unitary) -> GbsModel:
    """Independent Gaussian inputs with per-mode quadrature variances, mixed
    by an interferometer.

    ``var_x[k]`` and ``var_p[k]`` are the dimensionless variances 2*sigma/hbar
    of mode k before the interferometer (1 = vacuum).  The model blocks are
    V = U diag(lam) U^T and Y = U diag(mu) U^dagger with

        lam_k = 1/(1 + var_p[k]) - 1/(1 + var_x[k])
        mu_k  = 1 - 1/(1 + var_x[k]) - 1/(1 + var_p[k])
    """
    var_x = np.asarray(var_x, dtype=float)
    var_p = np.asarray(var_p, dtype=float)
    if var_x.shape != var_p.shape or var_x.ndim != 1:
        raise ValueError("variance lists must be 1-D and of equal length")
    if np.any(var_x <= 0) or np.any(var_p <= 0):
        raise ValueError("variances must be positive")
    m = var_x.size
    u = check_unitary(unitary, m)
    lam = 1.0 / (1.0 + var_p) - 1.0 / (1.0 + var_x)
    mu = 1.0 - 1.0 / (1.0 + var_x) - 1.0 / (1.0 + var_p)
    v = u @ np.diag(lam) @ u.T
    y = u @ np.diag(mu) @ u.conj().T
    a = np.zeros((2 * m, 2 * m), dtype=complex)
    a[:m, :m] = v
    a[:m, m:] = y
    a[m:, :m] = y.conj()
    a[m:, m:] = v.conj()
    return GbsModel(
        a, m, "general", {"var_x": var_x.tolist(), "var_p": var_p.tolist()}
    )


def model_from_husimi_covariance(sigma) -> GbsModel:
    """Model matrix from a Husimi covariance: A = X (I - Sigma^{-1})."""
    sigma = np.asarray(sigma, dtype=complex)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
        raise ValueError("covariance must be square with even dimension")
    m = sigma.shape[0] // 2
    try:
        inv = np.linalg.inv(sigma)
    except np.linalg.LinAlgError as exc:
        raise ValueError("covariance matrix is singular") from exc
    a = exchange_matrix(m) @ (np.eye(2 * m) - inv)
    return GbsModel(a, m, "custom", {"source": "husimi"})


def husimi_covariance(model: GbsModel) -> np.ndarray:
    """Husimi covariance implied by a model: Sigma = (I - X A)^{-1}."""
    m = model.modes
    return np.linalg.inv(np.eye(2 * m) - model.xa)


def nearest_unitary(t) -> np.ndarray:
    """Closest unitary (Frobenius sense) to a square matrix, via its SVD.

    Raises for (numerically) rank-deficient input, where the closest unitary
    is not unique.
    """
    t = np.asarray(t, dtype=complex)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError("expected a square matrix")
    u1, s, u2h = np.linalg.svd(t)
    if s[-1] <= 1e-12 * max(1.0, s[0]):
        raise ValueError("matrix is rank deficient; nearest unitary undefined")
    return u1 @ u2h


def validity_check(model: GbsModel) -> ValidityReport:
    """Report the spectral norm of X A and whether it is below one."""
    return ValidityReport(g_norm=model.g_norm, valid=model.g_norm < 1.0)
