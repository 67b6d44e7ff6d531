"""Exact and numeric toolkit for completely integrable holomorphic foliations
on (C^3, 0): first integrals, blow-ups, singular points, dicritical surfaces
and leaf tracing."""

from .algebra import MPoly, RationalFunction
from .blowup import CHARTS, get_chart, pullback_function, pullback_vector_field, transport_field
from .dicritical import Case, FactoredPair, classify, restriction_integral
from .errors import DomainError, FoliakitError, PreconditionError, StructuralError
from .foliation import (DarbouxFunction, VectorField, darboux_lie_derivative_vanishes, independence_witness,
                        is_first_integral, lie_derivative, restrict_to_coordinate_plane)
from .singular import (BaumBottLedger, baum_bott, baum_bott_global_check, index_gap, linear_part,
                       singular_locus_on_curve)

__version__ = "0.1.0"

__all__ = [
    "MPoly", "RationalFunction", "CHARTS", "get_chart", "pullback_function", "pullback_vector_field",
    "transport_field", "Case", "FactoredPair", "classify", "restriction_integral", "DomainError",
    "FoliakitError", "PreconditionError", "StructuralError", "DarbouxFunction", "VectorField",
    "darboux_lie_derivative_vanishes", "independence_witness", "is_first_integral", "lie_derivative",
    "restrict_to_coordinate_plane", "BaumBottLedger", "baum_bott", "baum_bott_global_check", "index_gap",
    "linear_part", "singular_locus_on_curve",
]
