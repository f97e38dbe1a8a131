"""Entire solutions of u_{z_1} u_{z_2} ... u_{z_n} = exp(g) for polynomial g."""

from .errors import (
    DegreeCapExceeded,
    DivisionByZero,
    EvaluationOverflow,
    HoloError,
    NoEntireSolution,
    NonPolynomial,
    ParseError,
    PreconditionViolation,
    SingularMatrix,
    UnknownVariable,
    ZeroBase,
    ZeroDivisorPolynomial,
)
from .expr import diff_expr, eval_expr
from .multipoly import (
    LinearForm,
    MultiPoly,
    compose_linear,
    const_ratio,
    evaluate,
    partial_derivative,
    poly_arith,
    substitute_linear_map,
)
from .parsing import parse_expr, parse_matrix, parse_poly, parse_scalar
from .reduce import MatrixA, determinant, inverse, reduce_solve_backsub, transform_g
from .report import Report, emit_report
from .scalar import GaussianRational, RootScalar, complex_eval, gq_arith, root_scalar_make
from .structure import additive_split, classify, interaction_graph, ridge_detect
from .synthesize import (
    SolutionForm,
    SolutionTerm,
    enumerate_affine_merges,
    render_solution,
    synthesize,
)
from .verify import (
    ExpPolySum,
    fd_crosscheck,
    gradient_closed_form,
    numeric_verify,
    quadrature_eval,
    symbolic_verify,
)

__all__ = [
    "DegreeCapExceeded",
    "DivisionByZero",
    "EvaluationOverflow",
    "ExpPolySum",
    "GaussianRational",
    "HoloError",
    "LinearForm",
    "MatrixA",
    "MultiPoly",
    "NoEntireSolution",
    "NonPolynomial",
    "ParseError",
    "PreconditionViolation",
    "Report",
    "RootScalar",
    "SingularMatrix",
    "SolutionForm",
    "SolutionTerm",
    "UnknownVariable",
    "ZeroBase",
    "ZeroDivisorPolynomial",
    "additive_split",
    "classify",
    "complex_eval",
    "compose_linear",
    "const_ratio",
    "determinant",
    "diff_expr",
    "emit_report",
    "enumerate_affine_merges",
    "eval_expr",
    "evaluate",
    "fd_crosscheck",
    "gq_arith",
    "gradient_closed_form",
    "interaction_graph",
    "inverse",
    "numeric_verify",
    "parse_expr",
    "parse_matrix",
    "parse_poly",
    "parse_scalar",
    "partial_derivative",
    "poly_arith",
    "quadrature_eval",
    "reduce_solve_backsub",
    "render_solution",
    "ridge_detect",
    "root_scalar_make",
    "substitute_linear_map",
    "symbolic_verify",
    "synthesize",
    "transform_g",
]

__version__ = "0.1.0"
