"""birigid: exact-arithmetic verification toolkit for maximal-center
exclusion computations on Fano threefolds, weighted complete intersections
and double solids."""

from .poly import (ArcDerivatives, Jet, MPoly, NotFiniteError, PolyError,
                   PolyParseError, arc_derivatives, format_rational,
                   parse_poly, parse_rational, univariate_common_roots)
from .linalg import RatMatrix, gaussian_rank
from .wps import (CoordinateStratum, FanoFamily, WeightSystem,
                  anticanonical_cube, classify_case, generic_member,
                  get_family, load_families, restrict_descrf,
                  stratum_singular_points, weighted_monomials)
from .isolating import (IsolatingSet, IsolationScenario, degree_bound,
                        exclusion_verdict, finiteness_oracle,
                        isolating_polynomials)
from .tower import (CortiInstance, CortiSurface, SigmaTriple, TowerGraph,
                    corti_check, corti_coefficients, kawakita_factor,
                    min_quadratic, min_quadratic_oracle, path_counts,
                    sigmas, two_n_squared_factor)
from .dualgraph import (CurveConfig, CurvePoint, GermFlags, GraphType,
                        classify_germ, correction_term,
                        enumerate_worst_case, flags_from_equation,
                        self_intersection)
from .defect import (BranchConfig, BranchSingularPoint, check_is_A_type,
                     condition_matrix, h0_dim, mu)
from .defect import defect as compute_defect
from .certificates import (ConeData, DPInstance, dp_contradiction,
                           family_verdict, k2_condition, sds_verdict)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
