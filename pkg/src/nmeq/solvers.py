"""Iteration schemes for X^s + A* X^-t A + B* X^-p B = Q.

Two schemes, chosen by which exponent dominates:

* fixed-point (s is the largest exponent): substitute Y = X^s and iterate
  Y_{n+1} = Q - A* Y_n^{-t/s} A - B* Y_n^{-p/s} B from Y_0 = alpha I.  The
  iterates ascend in the Loewner order to the maximal solution.
* coupled (t is the largest exponent): substitute Y = X^t and run the
  mixed-monotone pair X_{n+1} = F(X_n, Y_n), Y_{n+1} = F(Y_n, X_n) with
  F(X, Y) = A (Q - X^{s/t} - B* Y^{-p/t} B)^{-1} A* from X_0 = a I,
  Y_0 = b I.  Both sequences converge to the minimal solution.

Each scheme has sufficient preconditions that guarantee convergence with a
contraction constant delta < 1; ``force`` runs the iteration anyway, in which
case extremality of the limit is unknown.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import matcore as mc
from .analysis import ProblemInstance, Verdict

__all__ = [
    "PreconditionError",
    "PositivityError",
    "Scheme",
    "Extremality",
    "SolveOptions",
    "HistoryEntry",
    "SolveReport",
    "FixedPointCheck",
    "CoupledCheck",
    "ReducedEquation",
    "ScalarInstance",
    "ScalarRoots",
    "residual",
    "reduce",
    "lift",
    "reduced_residual",
    "normalize",
    "alpha_search",
    "b_search",
    "fixed_point_check",
    "coupled_check",
    "solve_fixed_point",
    "solve_coupled",
    "solve",
    "scalar_oracle",
]


class PreconditionError(RuntimeError):
    """A solver precondition failed and force was not requested."""


class PositivityError(RuntimeError):
    """An iterate or intermediate matrix left the positive definite cone."""


class Scheme(enum.Enum):
    FIXED_POINT = "fixed-point"
    COUPLED = "coupled"


class Extremality(enum.Enum):
    MAXIMAL = "maximal"
    MINIMAL = "minimal"
    UNKNOWN = "unknown"


class HistoryEntry(NamedTuple):
    iteration: int
    step_error_X: float
    step_error_Y: float


@dataclass
class SolveOptions:
    """Iteration controls.

    tol: absolute step-norm stopping threshold; None means 1e-14 * ||Q||.
    alpha: starting scalar for the fixed-point scheme (None: alpha_search).
    b_upper: upper starting scalar for the coupled scheme (None: b_search).
    force: iterate even when preconditions fail; extremality becomes unknown.
    """

    tol: float | None = None
    max_iter: int = 1000
    alpha: float | None = None
    b_upper: float | None = None
    force: bool = False
    record_history: bool = True

    def __post_init__(self):
        if self.tol is not None and not (math.isfinite(self.tol) and self.tol > 0.0):
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")


@dataclass(frozen=True)
class FixedPointCheck:
    """Precondition scalars of the fixed-point scheme for a given alpha.

    feasibility_lhs = alpha + alpha^{-t/s} ||A||^2 + alpha^{-p/s} ||B||^2
    must stay below lambda_min(Q); beta is the floor of the first iterate,
    and the contraction inequality t beta^{-t/s} ||A||^2 +
    p beta^{-p/s} ||B||^2 < s beta is equivalent to delta < 1.
    """

    alpha: float
    feasibility_lhs: float
    lambda_min_q: float
    beta: float
    contraction_lhs: float
    contraction_rhs: float
    delta: float
    scheme_applies: bool
    feasible: bool
    contractive: bool

    @property
    def ok(self) -> bool:
        return self.scheme_applies and self.feasible and self.contractive


@dataclass(frozen=True)
class CoupledCheck:
    """Precondition verdicts of the coupled scheme for a given b.

    a = lambda_min(A Q^-1 A*), theta = lambda_min(A* A) / b.  The four
    conditions are: separation b > a; domination Q >= b^-1 A* A +
    b^{s/t} I + a^{-p/t} B* B; the two contraction inequalities
    s ||A||^2 < t theta^2 a^{1-s/t} / 2 and p ||B||^2 < s a^{(p+s)/t}.
    """

    b: float
    a: float
    theta: float
    delta: float
    separation: Verdict
    domination: Verdict
    contraction_a: Verdict
    contraction_b: Verdict
    scheme_applies: bool

    @property
    def ok(self) -> bool:
        return self.scheme_applies and all(
            v.holds
            for v in (self.separation, self.domination, self.contraction_a, self.contraction_b)
        )


@dataclass
class SolveReport:
    """Outcome of one solve.

    solution_Y is the solution of the transformed equation in Y = X^lift_root
    and solution_X = solution_Y^(1/lift_root) solves the original equation.
    history rows are (iteration, step_error_X, step_error_Y); for the
    fixed-point scheme both step errors are the same single-sequence step
    norm.  iterates (kept when record_history) holds Y_n for the fixed-point
    scheme and (X_n, Y_n) pairs for the coupled scheme, starting at n = 0.
    """

    solution_X: np.ndarray
    solution_Y: np.ndarray
    scheme: Scheme
    iterations: int
    residual: float
    history: list[HistoryEntry]
    delta: float
    extremality: Extremality
    preconditions_held: bool
    swap_applied: bool
    converged: bool
    lift_root: float
    precheck: FixedPointCheck | CoupledCheck
    refined_bracket: tuple[np.ndarray, np.ndarray] | None = None
    iterates: list | None = None


def _resolve_tol(P: ProblemInstance, opts: SolveOptions) -> float:
    if opts.tol is not None:
        return opts.tol
    return 1e-14 * mc.spectral_norm(P.Q)


def residual(P: ProblemInstance, X) -> float:
    """||X^s + A* X^-t A + B* X^-p B - Q|| for an HPD candidate X."""
    X = mc.check_hermitian(X, "X")
    if X.shape != P.Q.shape:
        raise ValueError(f"X has shape {X.shape}, expected {P.Q.shape}")
    values, vectors = mc.herm_eig(X)
    if values[0] <= mc.PD_TOL * float(np.max(np.abs(values))):
        raise ValueError(
            f"X must be positive definite (lambda_min = {values[0]:.3e})"
        )
    adj = vectors.conj().T
    x_s = (vectors * values**P.s) @ adj
    x_mt = (vectors * values**-P.t) @ adj
    x_mp = (vectors * values**-P.p) @ adj
    R = x_s + P.A.conj().T @ x_mt @ P.A + P.B.conj().T @ x_mp @ P.B - P.Q
    return mc.spectral_norm(R)


@dataclass(frozen=True)
class ReducedEquation:
    """Transformed equation Y^outer + A* Y^-inner_t A + B* Y^-inner_p B = Q,
    where Y = X^root solves it iff X solves the original equation."""

    A: np.ndarray
    B: np.ndarray
    Q: np.ndarray
    outer: float
    inner_t: float
    inner_p: float
    root: float


def reduce(P: ProblemInstance, scheme: Scheme | None = None) -> ReducedEquation:
    """Reduction used by the given scheme (dispatched scheme when None)."""
    if scheme is None:
        scheme = Scheme.FIXED_POINT if P.s >= P.t else Scheme.COUPLED
    if scheme is Scheme.FIXED_POINT:
        return ReducedEquation(P.A, P.B, P.Q, 1.0, P.t / P.s, P.p / P.s, P.s)
    return ReducedEquation(P.A, P.B, P.Q, P.s / P.t, 1.0, P.p / P.t, P.t)


def lift(Y, exponent: float) -> np.ndarray:
    """Map a transformed-variable solution back: X = Y^exponent."""
    return mc.herm_power(Y, exponent)


def reduced_residual(R: ReducedEquation, Y) -> float:
    """Defect of Y on the transformed equation."""
    values, vectors = mc.herm_eig(Y)
    if values[0] <= mc.PD_TOL * float(np.max(np.abs(values))):
        raise ValueError(f"Y must be positive definite (lambda_min = {values[0]:.3e})")
    adj = vectors.conj().T
    y_o = (vectors * values**R.outer) @ adj
    y_t = (vectors * values**-R.inner_t) @ adj
    y_p = (vectors * values**-R.inner_p) @ adj
    return mc.spectral_norm(
        y_o + R.A.conj().T @ y_t @ R.A + R.B.conj().T @ y_p @ R.B - R.Q
    )


def normalize(P: ProblemInstance) -> tuple[ProblemInstance, float]:
    """Rescale so the largest eigenvalue of Q becomes 1.

    Returns the scaled instance and k = lambda_max(Q); a solution X~ of the
    scaled instance maps back to X = k^(1/s) X~.
    """
    k = mc.lambda_max(P.Q)
    if k == 1.0:
        return P, 1.0
    A = k ** (-(P.t / P.s + 1.0) / 2.0) * P.A
    B = k ** (-(P.p / P.s + 1.0) / 2.0) * P.B
    return ProblemInstance(A, B, P.Q / k, P.s, P.t, P.p), k


# ---------------------------------------------------------------------------
# fixed-point scheme (maximal solution, s the largest exponent)


def _alpha_grid(P: ProblemInstance) -> np.ndarray:
    lmq = mc.lambda_min(P.Q)
    return np.geomspace(1e-8 * lmq, lmq, 500)


def _feasibility_lhs(P: ProblemInstance, alpha, na2: float, nb2: float):
    return alpha + alpha ** (-P.t / P.s) * na2 + alpha ** (-P.p / P.s) * nb2


def alpha_search(P: ProblemInstance) -> float | None:
    """Feasible starting scalar minimizing the feasibility left-hand side.

    Scans 500 log-spaced alphas in (1e-8 lambda_min(Q), lambda_min(Q)] and
    returns the one with the smallest alpha + alpha^{-t/s} ||A||^2 +
    alpha^{-p/s} ||B||^2 among those keeping it below lambda_min(Q), or
    None when no grid point is feasible.
    """
    na2 = mc.spectral_norm(P.A) ** 2
    nb2 = mc.spectral_norm(P.B) ** 2
    grid = _alpha_grid(P)
    lhs = _feasibility_lhs(P, grid, na2, nb2)
    feasible = lhs < mc.lambda_min(P.Q)
    if not np.any(feasible):
        return None
    idx = np.argmin(np.where(feasible, lhs, np.inf))
    return float(grid[idx])


def _alpha_fallback(P: ProblemInstance) -> float:
    # force mode with no feasible alpha: take the unconstrained minimizer
    na2 = mc.spectral_norm(P.A) ** 2
    nb2 = mc.spectral_norm(P.B) ** 2
    grid = _alpha_grid(P)
    return float(grid[np.argmin(_feasibility_lhs(P, grid, na2, nb2))])


def fixed_point_check(P: ProblemInstance, alpha: float) -> FixedPointCheck:
    """Evaluate the fixed-point scheme preconditions at a starting alpha."""
    alpha = float(alpha)
    na2 = mc.spectral_norm(P.A) ** 2
    nb2 = mc.spectral_norm(P.B) ** 2
    lmq = mc.lambda_min(P.Q)
    scheme_applies = P.s >= max(P.t, P.p)
    if alpha > 0.0:
        feas_lhs = float(_feasibility_lhs(P, alpha, na2, nb2))
        beta = mc.lambda_min(
            P.Q
            - alpha ** (-P.t / P.s) * P.A.conj().T @ P.A
            - alpha ** (-P.p / P.s) * P.B.conj().T @ P.B
        )
    else:
        feas_lhs = math.inf
        beta = -math.inf
    feasible = 0.0 < alpha <= lmq and feas_lhs < lmq
    if beta > 0.0:
        contraction_lhs = P.t * beta ** (-P.t / P.s) * na2 + P.p * beta ** (-P.p / P.s) * nb2
        delta = (P.t / P.s) * na2 * beta ** (-P.t / P.s - 1.0) + (
            P.p / P.s
        ) * nb2 * beta ** (-P.p / P.s - 1.0)
    else:
        contraction_lhs = math.inf
        delta = math.inf
    contraction_rhs = P.s * beta
    return FixedPointCheck(
        alpha=alpha,
        feasibility_lhs=feas_lhs,
        lambda_min_q=lmq,
        beta=beta,
        contraction_lhs=contraction_lhs,
        contraction_rhs=contraction_rhs,
        delta=delta,
        scheme_applies=scheme_applies,
        feasible=feasible,
        contractive=contraction_lhs < contraction_rhs,
    )


def _eigh_pd(M: np.ndarray, what: str):
    values, vectors = np.linalg.eigh(M)
    if values[0] <= mc.PD_TOL * float(np.max(np.abs(values))):
        raise PositivityError(
            f"{what} is not positive definite (lambda_min = {values[0]:.3e})"
        )
    return values, vectors


def solve_fixed_point(P: ProblemInstance, opts: SolveOptions | None = None) -> SolveReport:
    """Maximal-solution fixed-point iteration in Y = X^s.

    Iterates Y_{n+1} = Q - A* Y_n^{-t/s} A - B* Y_n^{-p/s} B from
    Y_0 = alpha I until the step norm drops to opts.tol or max_iter is hit
    (non-convergence is reported on the result, not raised).  Under the
    preconditions the iterates ascend to the maximal solution and the a
    priori error bound delta^n/(1-delta) ||Y_1 - Y_0|| holds.
    """
    if opts is None:
        opts = SolveOptions()
    tol = _resolve_tol(P, opts)
    alpha = opts.alpha
    if alpha is None:
        alpha = alpha_search(P)
        if alpha is None:
            if not opts.force:
                raise PreconditionError(
                    "no feasible starting scalar alpha exists on the search grid; "
                    "the fixed-point preconditions cannot be satisfied "
                    "(enable force to iterate anyway)"
                )
            alpha = _alpha_fallback(P)
    check = fixed_point_check(P, float(alpha))
    if not check.ok and not opts.force:
        raise PreconditionError(_fixed_point_failure_message(check))
    e_t = P.t / P.s
    e_p = P.p / P.s
    n = P.n
    adj_a = P.A.conj().T
    adj_b = P.B.conj().T
    Y = check.alpha * np.eye(n, dtype=np.complex128)
    history: list[HistoryEntry] = []
    iterates: list[np.ndarray] | None = [Y] if opts.record_history else None
    converged = False
    iterations = 0
    for it in range(1, opts.max_iter + 1):
        values, vectors = _eigh_pd(Y, f"iterate {it - 1}")
        adj = vectors.conj().T
        y_mt = (vectors * values**-e_t) @ adj
        y_mp = (vectors * values**-e_p) @ adj
        Y_next = mc.hermitian_part(P.Q - adj_a @ y_mt @ P.A - adj_b @ y_mp @ P.B)
        step = mc.spectral_norm(Y_next - Y)
        history.append(HistoryEntry(it, step, step))
        if iterates is not None:
            iterates.append(Y_next)
        Y = Y_next
        iterations = it
        if step <= tol:
            converged = True
            break
    _eigh_pd(Y, "final iterate")
    X = mc.herm_power(Y, 1.0 / P.s)
    return SolveReport(
        solution_X=X,
        solution_Y=Y,
        scheme=Scheme.FIXED_POINT,
        iterations=iterations,
        residual=residual(P, X),
        history=history if opts.record_history else [],
        delta=check.delta,
        extremality=Extremality.MAXIMAL if check.ok else Extremality.UNKNOWN,
        preconditions_held=check.ok,
        swap_applied=P.swapped,
        converged=converged,
        lift_root=P.s,
        precheck=check,
        iterates=iterates,
    )


def _fixed_point_failure_message(check: FixedPointCheck) -> str:
    problems = []
    if not check.scheme_applies:
        problems.append("s is not the largest exponent (intended scheme is coupled)")
    if not check.feasible:
        problems.append(
            f"alpha = {check.alpha:.6g} infeasible: lhs {check.feasibility_lhs:.6g} "
            f"must stay below lambda_min(Q) = {check.lambda_min_q:.6g} with alpha in range"
        )
    if not check.contractive:
        problems.append(
            f"contraction fails: {check.contraction_lhs:.6g} >= {check.contraction_rhs:.6g}"
        )
    return "fixed-point preconditions failed: " + "; ".join(problems)


# ---------------------------------------------------------------------------
# coupled scheme (minimal solution, t the largest exponent)


def coupled_check(P: ProblemInstance, b: float) -> CoupledCheck:
    """Evaluate the coupled scheme preconditions at an upper scalar b."""
    b = float(b)
    if not (math.isfinite(b) and b > 0.0):
        raise ValueError(f"b must be a positive real, got {b}")
    na2 = mc.spectral_norm(P.A) ** 2
    nb2 = mc.spectral_norm(P.B) ** 2
    aqa = mc.hermitian_part(P.A @ np.linalg.solve(P.Q, P.A.conj().T))
    a = max(mc.lambda_min(aqa), 0.0)
    ata = mc.hermitian_part(P.A.conj().T @ P.A)
    theta = max(mc.lambda_min(ata), 0.0) / b
    separation = Verdict(b > a, a, b, note="requires lhs < rhs")
    dom_rhs = mc.hermitian_part(
        ata / b + b ** (P.s / P.t) * np.eye(P.n) + a ** (-P.p / P.t) * P.B.conj().T @ P.B
    )
    tol = 1e-10 * max(mc.spectral_norm(P.Q), mc.spectral_norm(dom_rhs), 1.0)
    gap = mc.lambda_min(mc.hermitian_part(P.Q - dom_rhs))
    domination = Verdict(gap >= -tol, gap, 0.0)
    contraction_a = Verdict(
        P.s * na2 < 0.5 * P.t * theta**2 * a ** (1.0 - P.s / P.t),
        P.s * na2,
        0.5 * P.t * theta**2 * a ** (1.0 - P.s / P.t),
    )
    contraction_b = Verdict(
        P.p * nb2 < P.s * a ** ((P.p + P.s) / P.t),
        P.p * nb2,
        P.s * a ** ((P.p + P.s) / P.t),
    )
    delta = 2.0 * max(
        (P.s / P.t) * na2 * theta**-2 * a ** (P.s / P.t - 1.0),
        (P.p / P.t) * na2 * nb2 * theta**-2 * a ** (-P.p / P.t - 1.0),
    )
    return CoupledCheck(
        b=b,
        a=a,
        theta=theta,
        delta=delta,
        separation=separation,
        domination=domination,
        contraction_a=contraction_a,
        contraction_b=contraction_b,
        scheme_applies=P.t >= max(P.s, P.p),
    )


def b_search(P: ProblemInstance) -> float | None:
    """First b on a log grid in (a, 10 lambda_max(Q)^(t/s)] passing the
    coupled-scheme conditions, or None."""
    aqa = mc.hermitian_part(P.A @ np.linalg.solve(P.Q, P.A.conj().T))
    a = max(mc.lambda_min(aqa), 0.0)
    upper = 10.0 * mc.lambda_max(P.Q) ** (P.t / P.s)
    if upper <= a or a == 0.0:
        return None
    for b in np.geomspace(a * (1.0 + 1e-6), upper, 100):
        check = coupled_check(P, float(b))
        if check.ok:
            return float(b)
    return None


def solve_coupled(P: ProblemInstance, opts: SolveOptions | None = None) -> SolveReport:
    """Minimal-solution coupled iteration in Y = X^t.

    Runs the mixed-monotone pair X_{n+1} = F(X_n, Y_n), Y_{n+1} = F(Y_n, X_n)
    with F(X, Y) = A (Q - X^{s/t} - B* Y^{-p/t} B)^{-1} A* from X_0 = a I and
    Y_0 = b I, stopping when the larger of the two step norms drops to
    opts.tol.  The lower sequence ascends, the upper descends, and both
    converge to the minimal solution; the first pair (X_1, Y_1) is returned
    as a refined bracket.  Loss of positive definiteness of the inverted
    matrix aborts with a diagnostic.
    """
    if opts is None:
        opts = SolveOptions()
    tol = _resolve_tol(P, opts)
    b = opts.b_upper
    if b is None:
        b = b_search(P)
        if b is None:
            if not opts.force:
                raise PreconditionError(
                    "no feasible upper scalar b found on the search grid; "
                    "the coupled preconditions cannot be satisfied "
                    "(enable force to iterate anyway)"
                )
            aqa = mc.hermitian_part(P.A @ np.linalg.solve(P.Q, P.A.conj().T))
            b = 2.0 * max(mc.lambda_min(aqa), 0.0)
    check = coupled_check(P, float(b))
    if not check.ok and not opts.force:
        raise PreconditionError(_coupled_failure_message(check))
    e_s = P.s / P.t
    e_p = P.p / P.t
    n = P.n
    adj_a = P.A.conj().T
    adj_b = P.B.conj().T
    X = check.a * np.eye(n, dtype=np.complex128)
    Y = check.b * np.eye(n, dtype=np.complex128)
    history: list[HistoryEntry] = []
    iterates: list | None = [(X, Y)] if opts.record_history else None
    refined: tuple[np.ndarray, np.ndarray] | None = None
    converged = False
    iterations = 0

    def half_step(lo_vals, lo_vecs, hi_vals, hi_vecs, it: int) -> np.ndarray:
        lo_pow = (lo_vecs * lo_vals**e_s) @ lo_vecs.conj().T
        hi_pow = (hi_vecs * hi_vals**-e_p) @ hi_vecs.conj().T
        inner = mc.hermitian_part(P.Q - lo_pow - adj_b @ hi_pow @ P.B)
        inner_vals, inner_vecs = np.linalg.eigh(inner)
        if inner_vals[0] <= mc.PD_TOL * float(np.max(np.abs(inner_vals))):
            raise PositivityError(
                f"inverted matrix Q - X^(s/t) - B* Y^(-p/t) B lost positive "
                f"definiteness at iteration {it} (lambda_min = {inner_vals[0]:.3e})"
            )
        inv = (inner_vecs / inner_vals) @ inner_vecs.conj().T
        return mc.hermitian_part(P.A @ inv @ adj_a)

    for it in range(1, opts.max_iter + 1):
        x_vals, x_vecs = _eigh_pd(X, f"lower iterate {it - 1}")
        y_vals, y_vecs = _eigh_pd(Y, f"upper iterate {it - 1}")
        X_next = half_step(x_vals, x_vecs, y_vals, y_vecs, it)
        Y_next = half_step(y_vals, y_vecs, x_vals, x_vecs, it)
        step_x = mc.spectral_norm(X_next - X)
        step_y = mc.spectral_norm(Y_next - Y)
        history.append(HistoryEntry(it, step_x, step_y))
        if iterates is not None:
            iterates.append((X_next, Y_next))
        if it == 1:
            refined = (X_next, Y_next)
        X, Y = X_next, Y_next
        iterations = it
        if max(step_x, step_y) <= tol:
            converged = True
            break
    Y_sol = mc.hermitian_part(0.5 * (X + Y))
    _eigh_pd(Y_sol, "limit")
    X_sol = mc.herm_power(Y_sol, 1.0 / P.t)
    return SolveReport(
        solution_X=X_sol,
        solution_Y=Y_sol,
        scheme=Scheme.COUPLED,
        iterations=iterations,
        residual=residual(P, X_sol),
        history=history if opts.record_history else [],
        delta=check.delta,
        extremality=Extremality.MINIMAL if check.ok else Extremality.UNKNOWN,
        preconditions_held=check.ok,
        swap_applied=P.swapped,
        converged=converged,
        lift_root=P.t,
        precheck=check,
        refined_bracket=refined,
        iterates=iterates,
    )


def _coupled_failure_message(check: CoupledCheck) -> str:
    problems = []
    if not check.scheme_applies:
        problems.append("t is not the largest exponent (intended scheme is fixed-point)")
    if not check.separation.holds:
        problems.append(f"separation fails: b = {check.b:.6g} <= a = {check.a:.6g}")
    if not check.domination.holds:
        problems.append(
            f"domination fails: lambda_min(Q - lower bound) = {check.domination.lhs:.6g} < 0"
        )
    if not check.contraction_a.holds:
        problems.append(
            f"first contraction fails: {check.contraction_a.lhs:.6g} >= "
            f"{check.contraction_a.rhs:.6g}"
        )
    if not check.contraction_b.holds:
        problems.append(
            f"second contraction fails: {check.contraction_b.lhs:.6g} >= "
            f"{check.contraction_b.rhs:.6g}"
        )
    return "coupled preconditions failed: " + "; ".join(problems)


def solve(P: ProblemInstance, opts: SolveOptions | None = None) -> SolveReport:
    """Dispatch on the largest exponent: s >= max(t, p) runs the fixed-point
    scheme (ties included), otherwise the coupled scheme."""
    if P.s >= P.t:
        return solve_fixed_point(P, opts)
    return solve_coupled(P, opts)


# ---------------------------------------------------------------------------
# scalar oracle (n = 1 specialization, used as an independent test oracle)


@dataclass(frozen=True)
class ScalarInstance:
    """The n = 1 equation x^s + a2 x^-t + b2 x^-p = q with q, a2, b2 > 0."""

    q: float
    a2: float
    b2: float
    s: float
    t: float
    p: float

    def __post_init__(self):
        for name, v in (("q", self.q), ("a2", self.a2), ("b2", self.b2)):
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be positive, got {v}")
        for name, v in (("s", self.s), ("t", self.t), ("p", self.p)):
            if not (math.isfinite(v) and v >= 1.0):
                raise ValueError(f"exponent {name} must be >= 1, got {v}")

    def f(self, x):
        return x**self.s + self.a2 * x**-self.t + self.b2 * x**-self.p - self.q


class ScalarRoots(NamedTuple):
    roots: tuple[float, ...]
    max_root: float | None
    min_root: float | None


def _bisect(f, lo: float, hi: float) -> float:
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if (hi - lo) <= 1e-14 * mid:
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (flo < 0.0) == (fm < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def scalar_oracle(S: ScalarInstance) -> ScalarRoots:
    """All positive roots of x^s + a2 x^-t + b2 x^-p - q by sign-change
    bisection on a log grid over [1e-12, 10 q^(1/s)], refined to 1e-14
    relative.  An empty root set is a valid outcome (no solution exists)."""
    grid = np.geomspace(1e-12, 10.0 * S.q ** (1.0 / S.s), 2000)
    fg = S.f(grid)
    roots: list[float] = []
    for i in range(len(grid) - 1):
        lo, hi = float(grid[i]), float(grid[i + 1])
        if fg[i] == 0.0:
            roots.append(lo)
        elif (fg[i] < 0.0) != (fg[i + 1] < 0.0):
            roots.append(_bisect(S.f, lo, hi))
    if fg[-1] == 0.0:
        roots.append(float(grid[-1]))
    roots = sorted(set(roots))
    return ScalarRoots(
        roots=tuple(roots),
        max_root=roots[-1] if roots else None,
        min_root=roots[0] if roots else None,
    )
