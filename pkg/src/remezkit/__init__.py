"""Sharp Remez-type inequalities for polynomials on the unit circle."""

from .arcset import Arc, ArcSet, contains, measure, normalize
from .closed_form import (SharpConstant, comparison_envelopes, extremal_coeffs, extremal_eval, gap_height,
                          height_gap, remez_constant_algebraic, remez_constant_interval, remez_constant_trig)
from .comb import (CombDomain, CombMapParams, delete_gap, equalize_measure, extremal_from_comb, raise_height,
                   solve_prevertices_from_comb, solve_prevertices_from_set, theta_eval)
from .errors import (CombError, ConditioningError, DegenerateSetError, DomainError, RemezkitError,
                     SolverError)
from .oracle import OracleProblem, OracleSolution, solve_problem_c, solve_problem_d
from .polynomial import CirclePolynomial
from .regularity import check_remez, is_n_regular, n_regular_extension, sublevel_set, sup_norm_on_circle

__version__ = "0.1.0"
