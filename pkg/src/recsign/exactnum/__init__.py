"""Exact arithmetic substrate: rationals, polynomials, isolated algebraic roots."""

from .cyclotomic import CyclotomicNumber, cyclotomic, euler_phi, root_of_unity_order
from .errors import HypothesisViolation, PrecisionExhausted
from .intervals import ComplexBox, Interval
from .ratpoly import RatPoly
from .real import PI_HI, PI_LO, Real, precision_budget
from .roots import (
    AlgebraicRoot,
    compare_real,
    field_element,
    gaussian_root,
    isolate_roots,
    locate,
    modulus_squared,
    power,
    quotient_of_roots_poly,
    rational_root,
    same_number,
    unit_ratio,
)


def refine(r: AlgebraicRoot, eps) -> AlgebraicRoot:
    return r.refine(eps)


__all__ = [
    "AlgebraicRoot", "ComplexBox", "CyclotomicNumber", "HypothesisViolation",
    "Interval", "PI_HI", "PI_LO", "PrecisionExhausted", "RatPoly", "Real",
    "compare_real", "cyclotomic", "euler_phi", "field_element", "gaussian_root",
    "isolate_roots", "locate", "modulus_squared", "power", "precision_budget",
    "quotient_of_roots_poly", "rational_root", "refine", "root_of_unity_order",
    "same_number", "unit_ratio",
]
