"""Exact local and global heights on products of projective spaces over Q and quadratic fields."""

from .errors import *  # noqa: F401,F403
from .arith import hensel_sqrt, is_prime, sqrt_mod_prime, valuation
from .logvalue import LogValue, Magnitude, lv_max, lv_min, parse_logvalue
from .places import INF, BoundProfile, Place, absolute_value, log_abs_sum
from .quadratic import (ExtPlace, QuadElement, QuadraticField, check_degree_formula, check_norm_formula,
                        decomposition, ext_absolute_value, ext_valuation, places_above)
from .geometry import (Ambient, Morphism, MultihomogPolynomial, ProjectivePoint, apply_morphism, evaluate,
                       monomial_basis, normalize_point, parse_polynomial, points_equal)
from .presentations import (DivisorPresentation, SubschemePresentation, add_subschemes, diagonal_presentation,
                            hypersurface_presentation, intersect, pullback, subscheme_presentation,
                            sum_divisors, validate)
from .heights import (HeightValue, LocalHeightResult, arithmetic_distance_global, arithmetic_distance_local,
                      estimate_bound_profile, global_height, hyperplane, local_height, local_height_support,
                      weil_height)
from .verify import CheckReport, SampleSpec, run_suite
from .workspace import Workspace, load_workspace

__version__ = "0.1.0"
