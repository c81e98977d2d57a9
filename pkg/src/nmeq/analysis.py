"""Solvability and uniqueness conditions, solution brackets, and the
factorization characterization for X^s + A* X^-t A + B* X^-p B = Q.

All checks return a ConditionReport with one Verdict per hypothesis; a report
never raises just because a condition fails, since a false verdict is data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import matcore as mc

__all__ = [
    "BracketUndefinedError",
    "NotASolutionError",
    "ProblemInstance",
    "DerivedScalars",
    "Verdict",
    "ConditionReport",
    "SolutionBounds",
    "Factorization",
    "derived_scalars",
    "check_necessary",
    "check_sufficient",
    "solution_bounds",
    "check_uniqueness_interval",
    "check_uniqueness_k",
    "scan_k",
    "verify_factorization",
    "factorization_from_solution",
]


class BracketUndefinedError(ValueError):
    """The two-sided solution bracket does not exist for this instance."""


class NotASolutionError(ValueError):
    """A candidate matrix fails the equation residual check."""


def _frozen(name, arr):
    out = mc.as_matrix(arr, name).copy()
    out.setflags(write=False)
    return out


def _require_nonsingular(M: np.ndarray, name: str) -> None:
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= 1e-12 * sv[0]:
        raise ValueError(
            f"{name} must be nonsingular (singular values span "
            f"[{sv[-1]:.3e}, {sv[0]:.3e}])"
        )


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """One equation X^s + A* X^-t A + B* X^-p B = Q.

    The constructor validates A, B nonsingular, Q Hermitian positive
    definite, and s, t, p >= 1, and puts the two correction terms in the
    canonical orientation t >= p.  The equation is symmetric in
    (A, t) <-> (B, p), so swapping loses nothing; ``swapped`` records
    whether it happened.
    """

    A: np.ndarray
    B: np.ndarray
    Q: np.ndarray
    s: float
    t: float
    p: float
    swapped: bool = field(init=False, default=False)

    def __post_init__(self):
        A = mc.as_matrix(self.A, "A")
        B = mc.as_matrix(self.B, "B")
        Q = mc.check_hermitian(self.Q, "Q")
        if A.shape != Q.shape or B.shape != Q.shape:
            raise ValueError(
                f"A, B, Q must share one dimension, got {A.shape}, {B.shape}, {Q.shape}"
            )
        if not mc.is_hpd(Q):
            raise ValueError("Q must be Hermitian positive definite")
        _require_nonsingular(A, "A")
        _require_nonsingular(B, "B")
        s, t, p = float(self.s), float(self.t), float(self.p)
        for name, v in (("s", s), ("t", t), ("p", p)):
            if not (math.isfinite(v) and v >= 1.0):
                raise ValueError(f"exponent {name} must be finite and >= 1, got {v}")
        swapped = False
        if t < p:
            A, B = B, A
            t, p = p, t
            swapped = True
        object.__setattr__(self, "A", _frozen("A", A))
        object.__setattr__(self, "B", _frozen("B", B))
        object.__setattr__(self, "Q", _frozen("Q", Q))
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "swapped", swapped)

    @property
    def n(self) -> int:
        return self.Q.shape[0]


class Verdict(NamedTuple):
    """One checked inequality.  For Loewner comparisons lhs is the smallest
    eigenvalue of (rhs matrix - lhs matrix) and rhs is 0."""

    holds: bool
    lhs: float
    rhs: float
    note: str = ""


@dataclass(frozen=True)
class ConditionReport:
    """Verdicts of one condition check, with the branch that applied and an
    optional solution bracket (lower, upper) when the check guarantees one."""

    criterion: str
    branch: str
    verdicts: dict[str, Verdict]
    holds: bool
    bracket: tuple[np.ndarray, np.ndarray] | None = None


class SolutionBounds(NamedTuple):
    """Two nested solution brackets: [c I, q_root] and the refined [m I, N]."""

    m: float
    N: np.ndarray
    c: float
    q_root: np.ndarray


@dataclass(frozen=True)
class DerivedScalars:
    """Scalars shared by the condition checks.

    k, k_tilde: largest / smallest eigenvalue of Q.
    q, q_tilde: min / max of the exponent ratios t/s and p/s.
    c  = max(lambda_min(A Q^-1 A*)^(1/t), lambda_min(B Q^-1 B*)^(1/p))
    c1 = the same with lambda_max in place of lambda_min.
    a  = lambda_min(A Q^-1 A*)^(s/t) + lambda_min(B Q^-1 B*)^(s/p)
    """

    k: float
    k_tilde: float
    q: float
    q_tilde: float
    c: float
    c1: float
    a: float


def _congruence(M: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """M Q^-1 M*, symmetrized."""
    return mc.hermitian_part(M @ np.linalg.solve(Q, M.conj().T))


def _clamped_root(value: float, root: float) -> float:
    # congruences of HPD matrices are HPD; clamp rounding-level negatives
    return max(value, 0.0) ** root


def _loewner_verdict(L, R, note: str = "") -> Verdict:
    tol = 1e-10 * max(mc.spectral_norm(L), mc.spectral_norm(R), 1.0)
    gap = mc.lambda_min(mc.hermitian_part(R - L))
    return Verdict(gap >= -tol, gap, 0.0, note)


def derived_scalars(P: ProblemInstance) -> DerivedScalars:
    aqa = _congruence(P.A, P.Q)
    bqb = _congruence(P.B, P.Q)
    lo_a, hi_a = mc.lambda_min(aqa), mc.lambda_max(aqa)
    lo_b, hi_b = mc.lambda_min(bqb), mc.lambda_max(bqb)
    return DerivedScalars(
        k=mc.lambda_max(P.Q),
        k_tilde=mc.lambda_min(P.Q),
        q=min(P.t / P.s, P.p / P.s),
        q_tilde=max(P.t / P.s, P.p / P.s),
        c=max(_clamped_root(lo_a, 1.0 / P.t), _clamped_root(lo_b, 1.0 / P.p)),
        c1=max(_clamped_root(hi_a, 1.0 / P.t), _clamped_root(hi_b, 1.0 / P.p)),
        a=_clamped_root(lo_a, P.s / P.t) + _clamped_root(lo_b, P.s / P.p),
    )


def check_necessary(P: ProblemInstance) -> ConditionReport:
    """Necessary condition on the squared spectral radii of A and B.

    A false verdict certifies that the instance has no Hermitian positive
    definite solution; a true verdict decides nothing on its own.
    """
    d = derived_scalars(P)
    if d.k <= 1.0:
        branch = "k<=1"
        bound = d.q**d.q / (d.q + 1.0) ** (d.q + 1.0)
    else:
        branch = "k>1"
        bound = d.q**d.q * d.k ** (1.0 + d.q_tilde) / (d.q + 1.0) ** (d.q + 1.0)
    rho_a2 = mc.spectral_radius(P.A) ** 2
    rho_b2 = mc.spectral_radius(P.B) ** 2
    verdicts = {
        "spectral_radius_A": Verdict(rho_a2 < bound, rho_a2, bound),
        "spectral_radius_B": Verdict(rho_b2 < bound, rho_b2, bound),
    }
    return ConditionReport(
        criterion="necessary",
        branch=branch,
        verdicts=verdicts,
        holds=all(v.holds for v in verdicts.values()),
    )


def check_sufficient(P: ProblemInstance) -> ConditionReport:
    """Sufficient condition on ||A||^2 + ||B||^2; on success a solution is
    guaranteed inside the reported bracket."""
    d = derived_scalars(P)
    lhs = mc.spectral_norm(P.A) ** 2 + mc.spectral_norm(P.B) ** 2
    if d.k <= 1.0:
        branch = "k<=1"
        rhs = d.q**d.q_tilde * d.k_tilde ** (d.q_tilde + 1.0) / (d.q + 1.0) ** (d.q_tilde + 1.0)
        lower = (d.q * d.k_tilde / (d.q + 1.0)) ** (1.0 / P.s)
    else:
        branch = "k>1"
        rhs = (
            d.q**d.q_tilde
            * d.k_tilde ** (d.q_tilde + 1.0)
            / (d.k**d.q_tilde * (d.q + 1.0) ** (d.q_tilde + 1.0))
        )
        lower = (d.q * d.k_tilde / (d.k * (d.q + 1.0))) ** (1.0 / P.s)
    holds = lhs < rhs
    bracket = None
    if holds:
        eye = np.eye(P.n, dtype=np.complex128)
        bracket = (lower * eye, mc.herm_power(P.Q, 1.0 / P.s))
    return ConditionReport(
        criterion="sufficient",
        branch=branch,
        verdicts={"norm_sum": Verdict(holds, lhs, rhs)},
        holds=holds,
        bracket=bracket,
    )


def solution_bounds(P: ProblemInstance) -> SolutionBounds:
    """Two-sided brackets [c I, Q^(1/s)] and the refined [m I, N].

    Every Hermitian positive definite solution lies in both intervals.
    Raises BracketUndefinedError when Q - c^s I (or the matrix under the
    1/s root of N) is not positive definite, which certifies that the
    instance cannot have a solution.
    """
    d = derived_scalars(P)
    n = P.n
    q_root = mc.herm_power(P.Q, 1.0 / P.s)
    gap = mc.hermitian_part(P.Q - d.c**P.s * np.eye(n))
    if not mc.is_hpd(gap):
        raise BracketUndefinedError(
            "bracket undefined; Q - c^s I is not positive definite "
            f"(lambda_min = {mc.lambda_min(gap):.3e}), so the instance "
            "cannot have a Hermitian positive definite solution"
        )
    a_ref = _congruence(P.A, gap)
    b_ref = _congruence(P.B, gap)
    m = max(
        _clamped_root(mc.lambda_min(a_ref), 1.0 / P.t),
        _clamped_root(mc.lambda_min(b_ref), 1.0 / P.p),
    )
    r = d.k_tilde / d.k
    q_mt = mc.herm_power(P.Q, -P.t / P.s)
    q_mp = mc.herm_power(P.Q, -P.p / P.s)
    inner = mc.hermitian_part(
        P.Q
        - r ** ((P.t - 1.0) / P.s) * P.A.conj().T @ q_mt @ P.A
        - r ** ((P.p - 1.0) / P.s) * P.B.conj().T @ q_mp @ P.B
    )
    if not mc.is_hpd(inner):
        raise BracketUndefinedError(
            "bracket undefined; the matrix under the 1/s root of the upper "
            f"bound N is not positive definite (lambda_min = {mc.lambda_min(inner):.3e}), "
            "so the instance cannot have a Hermitian positive definite solution"
        )
    return SolutionBounds(m=m, N=mc.herm_power(inner, 1.0 / P.s), c=d.c, q_root=q_root)


def check_uniqueness_interval(P: ProblemInstance) -> ConditionReport:
    """Uniqueness of the solution inside [c I, Q^(1/s)].

    The domination hypothesis quantifies over every X in the interval; the
    correction map X -> A* X^-t A + B* X^-p B is order-reversing, so checking
    it at the lower endpoint X = c I dominates the whole interval.  The
    verdict is labeled accordingly.
    """
    d = derived_scalars(P)
    n = P.n
    eye = np.eye(n, dtype=np.complex128)
    aqa = _congruence(P.A, P.Q)
    bqb = _congruence(P.B, P.Q)
    floor_sum = mc.hermitian_part(
        mc.herm_power(aqa, P.s / P.t) + mc.herm_power(bqb, P.s / P.p)
    )
    v_floor = _loewner_verdict(floor_sum, P.Q)
    correction_at_c = mc.hermitian_part(
        d.c**-P.t * P.A.conj().T @ P.A + d.c**-P.p * P.B.conj().T @ P.B
    )
    v_dom = _loewner_verdict(
        correction_at_c,
        mc.hermitian_part(P.Q - floor_sum),
        note="checked at lower endpoint X = cI",
    )
    na2 = mc.spectral_norm(P.A) ** 2
    nb2 = mc.spectral_norm(P.B) ** 2
    contraction = (1.0 / P.s) * d.a ** (1.0 / P.s - 1.0) * (
        P.t / d.c ** (P.t + 1.0) * na2 + P.p / d.c ** (P.p + 1.0) * nb2
    )
    v_contr = Verdict(contraction < 1.0, contraction, 1.0)
    verdicts = {"interval_floor": v_floor, "domination": v_dom, "contraction": v_contr}
    holds = all(v.holds for v in verdicts.values())
    bracket = None
    if holds:
        bracket = (d.c * eye, mc.herm_power(P.Q, 1.0 / P.s))
    return ConditionReport(
        criterion="uniqueness-interval",
        branch="",
        verdicts=verdicts,
        holds=holds,
        bracket=bracket,
    )


def check_uniqueness_k(P: ProblemInstance, k: float) -> ConditionReport:
    """Uniqueness of the solution inside [k c1 I, Q^(1/s)] for a scale k > 0.

    k here is a free parameter, not an eigenvalue of Q; scan_k searches a
    grid for a value making every hypothesis hold.
    """
    k = float(k)
    if not (math.isfinite(k) and k > 0.0):
        raise ValueError(f"k must be a positive real, got {k}")
    d = derived_scalars(P)
    power_sum = k**-P.t + k**-P.p
    v_powers = Verdict(power_sum < 1.0, power_sum, 1.0)
    spread_lhs = d.c1**P.s / d.k_tilde
    spread_rhs = (1.0 - k**-P.t - k**-P.p) * k**-P.s
    v_spread = Verdict(spread_lhs <= spread_rhs, spread_lhs, spread_rhs)
    na2 = mc.spectral_norm(P.A) ** 2
    nb2 = mc.spectral_norm(P.B) ** 2
    kc = k * d.c1
    contraction = (1.0 / P.s) * kc ** (1.0 - P.s) * (
        P.t / kc ** (P.t + 1.0) * na2 + P.p / kc ** (P.p + 1.0) * nb2
    )
    v_contr = Verdict(contraction < 1.0, contraction, 1.0)
    verdicts = {"power_sum": v_powers, "spread": v_spread, "contraction": v_contr}
    holds = all(v.holds for v in verdicts.values())
    bracket = None
    if holds:
        bracket = (kc * np.eye(P.n, dtype=np.complex128), mc.herm_power(P.Q, 1.0 / P.s))
    return ConditionReport(
        criterion="uniqueness-scaled",
        branch=f"k={k:.6g}",
        verdicts=verdicts,
        holds=holds,
        bracket=bracket,
    )


def scan_k(P: ProblemInstance, grid=None) -> float | None:
    """First k on a log grid in [1.01, 100] making check_uniqueness_k hold."""
    if grid is None:
        grid = np.geomspace(1.01, 100.0, 200)
    for k in grid:
        if check_uniqueness_k(P, float(k)).holds:
            return float(k)
    return None


@dataclass(frozen=True)
class Factorization:
    """Witness (U, lam, N1, N2) of the coefficient factorization.

    U is unitary, lam holds the positive diagonal entries of the middle
    factor, and A = (U diag(lam) U*)^(t/2s) N1, B = (U diag(lam) U*)^(p/2s) N2
    with U diag(lam) U* + N1* N1 + N2* N2 = Q.
    """

    U: np.ndarray
    lam: np.ndarray
    N1: np.ndarray
    N2: np.ndarray


def verify_factorization(P: ProblemInstance, F: Factorization, tol: float = 1e-8) -> bool:
    """True iff F reproduces A, B and completes Q within tolerance."""
    U = mc.as_matrix(F.U, "U")
    N1 = mc.as_matrix(F.N1, "N1")
    N2 = mc.as_matrix(F.N2, "N2")
    lam = np.asarray(F.lam, dtype=float).ravel()
    n = P.n
    if U.shape != (n, n) or N1.shape != (n, n) or N2.shape != (n, n) or lam.shape != (n,):
        raise ValueError("factorization dimensions do not match the instance")
    if np.any(lam <= 0.0):
        return False
    if mc.spectral_norm(U.conj().T @ U - np.eye(n)) > tol:
        return False
    core = mc.hermitian_part((U * lam) @ U.conj().T)
    ok_a = mc.spectral_norm(P.A - mc.herm_power(core, P.t / (2.0 * P.s)) @ N1)
    ok_b = mc.spectral_norm(P.B - mc.herm_power(core, P.p / (2.0 * P.s)) @ N2)
    ok_q = mc.spectral_norm(core + N1.conj().T @ N1 + N2.conj().T @ N2 - P.Q)
    return (
        ok_a <= tol * (1.0 + mc.spectral_norm(P.A))
        and ok_b <= tol * (1.0 + mc.spectral_norm(P.B))
        and ok_q <= tol * (1.0 + mc.spectral_norm(P.Q))
    )


def factorization_from_solution(
    P: ProblemInstance, X, tol: float | None = None
) -> Factorization:
    """Build the factorization witness from a solution X.

    Eigendecomposes X^s = U diag(lam) U* and sets N1 = X^(-t/2) A,
    N2 = X^(-p/2) B.  Raises NotASolutionError when X fails the equation
    residual check (tolerance 1e-8 * (1 + ||Q||) by default).
    """
    X = mc.check_hermitian(X, "X")
    if X.shape != P.Q.shape:
        raise ValueError(f"X has shape {X.shape}, expected {P.Q.shape}")
    values, vectors = mc.herm_eig(X)
    if values[0] <= mc.PD_TOL * float(np.max(np.abs(values))):
        raise NotASolutionError(
            f"candidate is not positive definite (lambda_min = {values[0]:.3e})"
        )
    adj = vectors.conj().T
    x_s = mc.hermitian_part((vectors * values**P.s) @ adj)
    x_mt = (vectors * values**-P.t) @ adj
    x_mp = (vectors * values**-P.p) @ adj
    res = mc.spectral_norm(
        x_s + P.A.conj().T @ x_mt @ P.A + P.B.conj().T @ x_mp @ P.B - P.Q
    )
    if tol is None:
        tol = 1e-8 * (1.0 + mc.spectral_norm(P.Q))
    if res > tol:
        raise NotASolutionError(
            f"candidate is not a solution (residual {res:.3e} > tolerance {tol:.3e})"
        )
    n1 = (vectors * values ** (-P.t / 2.0)) @ adj @ P.A
    n2 = (vectors * values ** (-P.p / 2.0)) @ adj @ P.B
    return Factorization(U=vectors, lam=values**P.s, N1=n1, N2=n2)
