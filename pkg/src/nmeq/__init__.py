"""Hermitian positive definite solutions of X^s + A* X^-t A + B* X^-p B = Q.

Library layout: matcore (dense Hermitian primitives), analysis (solvability
and uniqueness conditions, brackets, factorization), solvers (the two
iteration schemes), probfile (file formats), builtin (bundled reference
problems), cli (command line).
"""

from .analysis import (
    BracketUndefinedError,
    ConditionReport,
    DerivedScalars,
    Factorization,
    NotASolutionError,
    ProblemInstance,
    SolutionBounds,
    Verdict,
    check_necessary,
    check_sufficient,
    check_uniqueness_interval,
    check_uniqueness_k,
    derived_scalars,
    factorization_from_solution,
    scan_k,
    solution_bounds,
    verify_factorization,
)
from .builtin import BuiltinProblem, example
from .matcore import (
    hermitian_part,
    herm_power,
    is_hpd,
    lambda_max,
    lambda_min,
    loewner_leq,
    spectral_norm,
    spectral_radius,
)
from .probfile import (
    ProblemFile,
    ProblemFileError,
    SolutionFile,
    load_problem,
    load_solution,
    parse_problem,
    parse_solution,
    problem_from_instance,
    write_history_csv,
    write_problem,
    write_solution,
)
from .solvers import (
    Extremality,
    HistoryEntry,
    PositivityError,
    PreconditionError,
    Scheme,
    ScalarInstance,
    SolveOptions,
    SolveReport,
    alpha_search,
    b_search,
    coupled_check,
    fixed_point_check,
    normalize,
    residual,
    scalar_oracle,
    solve,
    solve_coupled,
    solve_fixed_point,
)

__version__ = "0.1.0"

__all__ = [
    "BracketUndefinedError",
    "BuiltinProblem",
    "ConditionReport",
    "DerivedScalars",
    "Extremality",
    "Factorization",
    "HistoryEntry",
    "NotASolutionError",
    "PositivityError",
    "PreconditionError",
    "ProblemFile",
    "ProblemFileError",
    "ProblemInstance",
    "ScalarInstance",
    "Scheme",
    "SolutionBounds",
    "SolutionFile",
    "SolveOptions",
    "SolveReport",
    "Verdict",
    "alpha_search",
    "b_search",
    "check_necessary",
    "check_sufficient",
    "check_uniqueness_interval",
    "check_uniqueness_k",
    "coupled_check",
    "derived_scalars",
    "example",
    "factorization_from_solution",
    "fixed_point_check",
    "herm_power",
    "hermitian_part",
    "is_hpd",
    "lambda_max",
    "lambda_min",
    "load_problem",
    "load_solution",
    "loewner_leq",
    "normalize",
    "parse_problem",
    "parse_solution",
    "problem_from_instance",
    "residual",
    "scalar_oracle",
    "scan_k",
    "solution_bounds",
    "solve",
    "solve_coupled",
    "solve_fixed_point",
    "spectral_norm",
    "spectral_radius",
    "verify_factorization",
    "write_history_csv",
    "write_problem",
    "write_solution",
]
