"""Exact decision procedures for hypertranscendence and algebraic
independence of solutions of rank-one q-difference and shift equations
over Q(z), with self-verifying certificates."""

from .certificates import Verdict, VerdictKind
from .errors import DiffGaloisError, InvalidParameterError, ParseError, SizeError, ZeroInputError
from .exactalg import Derivation, Poly, QScale, RatFunc, TauShift, parse, render
from .extensions import build_iterated_matrix, dual_twist, structure_report, verify_solution_identity
from .qgalois import (
    classify_first_order,
    delta_dimension,
    galois_report,
    independence_verdict,
    monomial_coboundary_test,
    reduce_mod_image,
    standard_form,
    torsion_test,
)
from .shiftgalois import (
    GammaProblem,
    gamma_application,
    shift_classify,
    shift_coboundary_test,
    shift_galois_report,
    shift_independence_verdict,
    shift_reduce_mod_image,
    shift_standard_form,
)

__version__ = "0.1.0"
