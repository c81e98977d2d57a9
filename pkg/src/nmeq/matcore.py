"""Dense Hermitian matrix primitives used by the solvers and condition checks.

All routines work on square complex (or real) ndarrays.  Matrices that are
nominally Hermitian are re-symmetrized before use so that rounding drift from
earlier arithmetic cannot accumulate across a computation.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

__all__ = [
    "ATOL_HERM",
    "RTOL_EIG",
    "PD_TOL",
    "RTOL_RHO",
    "EigenPair",
    "as_matrix",
    "hermitian_part",
    "check_hermitian",
    "herm_eig",
    "lambda_min",
    "lambda_max",
    "herm_power",
    "spectral_norm",
    "spectral_radius",
    "loewner_leq",
    "is_hpd",
]

# Hermiticity drift allowed on inputs, relative to 1 + ||M||.
ATOL_HERM = 1e-12
# Relative accuracy expected of an eigendecomposition reconstruction.
RTOL_EIG = 1e-12
# Positive definiteness margin, scaled by the largest |eigenvalue|.
PD_TOL = 1e-12
# Relative termination tolerance of the spectral radius iteration.
RTOL_RHO = 1e-8

_MAX_RHO_SQUARINGS = 40


class EigenPair(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    ``values`` are real and ascending, ``vectors`` has the matching
    eigenvectors as columns and is unitary, so
    ``vectors @ diag(values) @ vectors.conj().T`` reconstructs the input.
    """

    values: np.ndarray
    vectors: np.ndarray


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Validate and return ``M`` as a square complex128 ndarray."""
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"{name}: expected a square matrix, got shape {A.shape}")
    if A.shape[0] == 0:
        raise ValueError(f"{name}: dimension must be at least 1")
    A = A.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise ValueError(f"{name}: entries must be finite")
    return A


def hermitian_part(M) -> np.ndarray:
    """Return (M + M*)/2."""
    A = np.asarray(M)
    return 0.5 * (A + A.conj().T)


def check_hermitian(M, name: str = "matrix") -> np.ndarray:
    """Validate that ``M`` is Hermitian up to drift and return it symmetrized."""
    A = as_matrix(M, name)
    drift = np.linalg.norm(A - A.conj().T, 2)
    if drift > ATOL_HERM * (1.0 + np.linalg.norm(A, 2)):
        raise ValueError(f"{name}: not Hermitian (drift {drift:.3e})")
    return hermitian_part(A)


def herm_eig(M) -> EigenPair:
    """Eigendecomposition of a Hermitian matrix, values ascending."""
    A = check_hermitian(M)
    values, vectors = np.linalg.eigh(A)
    return EigenPair(values, vectors)


def lambda_min(M) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(herm_eig(M).values[0])


def lambda_max(M) -> float:
    """Largest eigenvalue of a Hermitian matrix."""
    return float(herm_eig(M).values[-1])


def _pd_floor(values: np.ndarray) -> float:
    return PD_TOL * float(np.max(np.abs(values), initial=0.0))


def herm_power(M, r: float) -> np.ndarray:
    """Principal power ``M^r`` of a Hermitian matrix.

    For non-integer or negative exponents the matrix must be positive
    definite; for nonnegative integer exponents any Hermitian matrix is
    accepted.  The result is Hermitian (re-symmetrized), and positive
    definite whenever the input is.
    """
    r = float(r)
    if not math.isfinite(r):
        raise ValueError(f"exponent must be finite, got {r}")
    values, vectors = herm_eig(M)
    if r.is_integer() and r >= 0:
        powered = values**r
    else:
        if values[0] <= _pd_floor(values):
            raise ValueError(
                f"matrix must be positive definite for exponent {r} "
                f"(lambda_min = {values[0]:.3e})"
            )
        powered = values**r
    return hermitian_part((vectors * powered) @ vectors.conj().T)


def spectral_norm(M) -> float:
    """Largest singular value."""
    A = np.asarray(M, dtype=np.complex128)
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise ValueError("spectral_norm: entries must be finite")
    return float(np.linalg.norm(A, 2))


def spectral_radius(M) -> float:
    """Largest eigenvalue modulus of a general square matrix.

    Uses norms of repeatedly squared, renormalized powers: the estimates
    ``||M^(2^k)||^(1/2^k)`` decrease to the spectral radius.  Terminates when
    successive estimates agree to RTOL_RHO relative; an exactly vanishing
    power means the matrix is nilpotent and the radius is 0.
    """
    A = as_matrix(M, "spectral_radius")
    nrm = spectral_norm(A)
    if nrm == 0.0:
        return 0.0
    P = A / nrm
    log_acc = math.log(nrm)
    est_prev = nrm
    for k in range(1, _MAX_RHO_SQUARINGS + 1):
        P = P @ P
        pn = spectral_norm(P)
        if pn == 0.0:
            return 0.0
        P = P / pn
        log_acc = 2.0 * log_acc + math.log(pn)
        est = math.exp(log_acc / 2.0**k)
        if abs(est - est_prev) <= RTOL_RHO * max(est, est_prev) or est <= 1e-14 * nrm:
            return est
        est_prev = est
    raise ArithmeticError(
        f"spectral radius iteration did not converge in {_MAX_RHO_SQUARINGS} squarings"
    )


def loewner_leq(L, R, tol: float = 0.0) -> bool:
    """True iff ``L <= R`` in the positive semidefinite order, up to ``tol``."""
    A = as_matrix(L, "loewner lhs")
    B = as_matrix(R, "loewner rhs")
    if A.shape != B.shape:
        raise ValueError(f"loewner_leq: shape mismatch {A.shape} vs {B.shape}")
    return lambda_min(hermitian_part(B - A)) >= -tol


def is_hpd(M, tol: float | None = None) -> bool:
    """True iff ``M`` is Hermitian positive definite.

    ``tol`` is the strict lower bound required of the smallest eigenvalue;
    by default it scales with the largest eigenvalue modulus.
    """
    try:
        values = herm_eig(M).values
    except ValueError:
        return False
    if tol is None:
        tol = _pd_floor(values)
    return bool(values[0] > tol)
