"""Exact cubature formulae on spheres and Gaussian/orthant integrals."""
from .exactnum import FieldElement, field_inv, field_mul, field_to_float

__version__ = "0.1.0"

__all__ = ["FieldElement", "field_inv", "field_mul", "field_to_float", "__version__"]
