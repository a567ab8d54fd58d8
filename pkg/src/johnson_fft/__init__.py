"""Fast Fourier transform on the Johnson graph J(n, k) via Gelfand-Tsetlin bases."""

from .combinatorics import (BasisLabel, StandardTableau, enumerate_labels, enumerate_words,
                            format_tableau, parse_tableau, rs_chain, tableau_contents)
from .errors import (ConstructionError, ConvergenceError, InvariantError, OracleError,
                     PlanFormatError, ResourceBudgetError)
from .factorization import SparseOrthFactor, TransformPlan, build_plan
from .oracle import verify_plan
from .plan_io import load_plan, write_plan
from .spectral import SpectralReport, project, weights
from .transform import OpCounter, apply_factor, apply_factor_transpose, forward, inverse

__all__ = [
    "BasisLabel", "StandardTableau", "enumerate_labels", "enumerate_words", "format_tableau",
    "parse_tableau", "rs_chain", "tableau_contents",
    "ConstructionError", "ConvergenceError", "InvariantError", "OracleError", "PlanFormatError",
    "ResourceBudgetError",
    "SparseOrthFactor", "TransformPlan", "build_plan", "verify_plan", "load_plan", "write_plan",
    "SpectralReport", "project", "weights",
    "OpCounter", "apply_factor", "apply_factor_transpose", "forward", "inverse",
]
