"""Diophantine approximation constants and Lagrange-type spectra in three
arithmetic settings (rational, imaginary quadratic, Heisenberg), cross-checked
against cusp-excursion geometry in the upper half-plane/space models."""

from .bianchi import (
    BianchiContext,
    FractionPoint,
    bianchi_spectrum_sample,
    c_I_estimate,
    enumerate_EI,
    is_in_EI,
    loxodromic_axis,
    real_spectrum_sample,
)
from .contfrac import (
    CFWord,
    approx_constant,
    brute_force_constant,
    expand,
    markov_value,
    parse_cfword,
    word_value,
)
from .errors import DomainError, ParseError, PrecisionExhausted, RationalInputError
from .heis import (
    HeisContext,
    HeisPoint,
    HeisRational,
    c_prime_estimate,
    cygan_dist,
    heis_inverse,
    heis_mul,
    heis_penetration,
    is_in_EprimeI,
)
from .hypgeo import (
    GeodesicSpec,
    Mobius,
    ModelPoint,
    busemann_height,
    cuspidal_distance,
    excursion_limsup,
    geodesic_height,
    horoball_penetration,
    penetration_depth,
    quotient_height,
)
from .numkit import ExactComplex, IdealSpec, OrderSpec, QuadInt, QuadSurd, quad_norm
from .spectra import (
    EstimatorTrace,
    SpectrumSample,
    bound_check,
    closure_diagnostics,
    duality,
    duality_inverse,
)

__version__ = "0.1.0"
