"""Exact finite-dimensional representation theory of quantum AdS symmetry.

Everything runs over the cyclotomic field Q(zeta_L) with q a primitive
root of unity inside it; no floats touch any linear algebra.
"""

from .scalars import CycField, ClassicalField

__all__ = ["CycField", "ClassicalField"]

__version__ = "0.1.0"
