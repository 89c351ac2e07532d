"""Differential geometry on polytopal complexes, in exact arithmetic."""

from .poly import Polynomial, simplex_integral
from .geometry import AffineMap, HalfSpace, Polytope, triangulate, volume
from .forms import Form
from .complexes import (ComplexError, FormOnComplex, Gluing, PolytopalComplex,
                        product_complex, product_map, product_polytope,
                        validate_form)
from .chains import (Chain, Piece, boundary_cancels, integrate,
                     polytope_chain, stokes_check)
from .homotopy import cone_homotopy
from .bundles import (Morphism, MorphismError, MorphismMap, basic_descent,
                      circle_bundle_chern, fiber_chain)

__all__ = [
    "Polynomial", "simplex_integral",
    "AffineMap", "HalfSpace", "Polytope", "triangulate", "volume",
    "Form",
    "ComplexError", "FormOnComplex", "Gluing", "PolytopalComplex",
    "product_complex", "product_map", "product_polytope", "validate_form",
    "Chain", "Piece", "boundary_cancels", "integrate", "polytope_chain",
    "stokes_check",
    "cone_homotopy",
    "Morphism", "MorphismError", "MorphismMap", "basic_descent",
    "circle_bundle_chern", "fiber_chain",
]
