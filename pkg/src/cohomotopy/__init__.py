"""Exact witnesses for elementary cohomotopy over fibre squares of rings.

Polynomials and matrices are exact over Q. Every map that claims a loop,
homotopy, path, completion or splitting returns the witness and checks its
boundary conditions by substitution before returning.
"""

from .errors import AlgebraError, InputError, VerificationError
from .poly import Poly, format_poly, parse_poly
from .rings import DirectSum, Element, FibreProduct, PolyRing, QuotientRing, hom_preimage
from .squares import BUILTIN_NAMES, builtin_square, circle_ring
from .matrix import ElemFactor, Matrix, SLMatrix, elementary_assemble, sl2_factor_euclidean
from .homotopy import (
    GammaElem,
    HomotopyWitness,
    LoopWitness,
    PathWitness,
    chi_map,
    circle_class,
    homotopy_check,
    loop_check,
    path_check,
)
from .cocycle import cocycle_extract, completion_to_split, milnor_patch, split_complete, umrow_check
from .winding import tau, winding_number
from .smith import obstruction_group, smith_normal_form

__all__ = [
    "AlgebraError", "InputError", "VerificationError",
    "Poly", "format_poly", "parse_poly",
    "DirectSum", "Element", "FibreProduct", "PolyRing", "QuotientRing", "hom_preimage",
    "BUILTIN_NAMES", "builtin_square", "circle_ring",
    "ElemFactor", "Matrix", "SLMatrix", "elementary_assemble", "sl2_factor_euclidean",
    "GammaElem", "HomotopyWitness", "LoopWitness", "PathWitness",
    "chi_map", "circle_class", "homotopy_check", "loop_check", "path_check",
    "cocycle_extract", "completion_to_split", "milnor_patch", "split_complete", "umrow_check",
    "tau", "winding_number", "obstruction_group", "smith_normal_form",
]
