"""serretlab: high-precision arc lengths, equal-arc-length division
points and numerically certified minimal polynomials for Serret curves
(Erdos lemniscates, sinusoidal spirals, Cassini ovals, regular
polynomial lemniscates), plus an identity verification suite and an
SVG renderer."""

from .algebra import MinPolyCandidate, documented_degree_bound, minpoly, pslq
from .curves import (Erdos, PolyLemniscate, Regular, Sinusoidal, cassini_reduced_integral,
                     cos_u_of_v, normalized_arc_integral, polar_arc_length, polar_radius,
                     total_length_closed, total_length_quadrature, v_of_u)
from .division import (CassiniDivision, DivisionPoint, divide_cassini,
                       divide_fundamental_arc, divide_kiepert, expand_by_symmetry,
                       subarc_length)
from .errors import (ConfigurationError, ConvergenceError, DomainError, IntegrandError,
                     InternalConsistencyError, SerretError, SpuriousRelationError)
from .identities import IdentityReport, run_all
from .numkernel import (BigReal, PrecisionContext, elementary, from_decimal,
                        make_context, pi, to_decimal)
from .quadrature import QuadratureResult, beta_integral_check, tanh_sinh
from .render import Polyline, RenderOptions, emit_svg, mandelbrot_coeffs, trace_implicit, trace_polar
from .specfun import (EllipticModulus, Hyp2F1Params, beta, ellip_k, gamma,
                      gauss_value_at_1, hyp2f1)

__version__ = "0.1.0"
