"""Exact arithmetic for surfaces carrying two conic fibrations: fiber
analysis, obstruction certificates, rational point propagation, and p-adic
coverage probes."""

from .errors import *  # noqa: F401,F403
from .factorization import factor_unipoly
from .hensel import hensel_lift_root
from .hilbert import REAL, hilbert_symbol
from .numberfield import (NumberField, QQ, is_square_in_numberfield,
                          number_field)
from .padics import PadicValue
from .polys import BinaryForm, binary_resultant
from .conic import (ConicParametrization, NoPoint, TernaryQuadraticForm,
                    classify_form, find_rational_point, intersect_conics,
                    local_solvable, parametrize)
from .surface import (BiConicSurface, Certificate, Fiber, SurfacePoint,
                      bad_locus, build_surface, check_hypotheses, check_smooth,
                      discriminant_sextic, eval_fibration, fiber_at,
                      obstruction_certificate, ramification_of_restriction,
                      singular_fiber_table)
from .localpoints import (ResidueTarget, enumerate_residues, lift_point,
                          padic_distance)
from .propagate import (CoverageStats, PropConfig, PropNode, SteerFailure,
                        SteerResult, coverage_probe, expand_node,
                        generate_points, good_primes, steer_to_target)
from .specfile import SurfaceSpec, load_spec, parse_spec

__version__ = "0.1.0"
