"""Exact computations with finite-dimensional quasi-Hopf algebras and their quantum doubles."""

from .algebra import Presentation, op_cop, validate_presentation
from .scalars import Cyclotomic, root_of_unity

__version__ = "0.1.0"

__all__ = ["Cyclotomic", "Presentation", "op_cop", "root_of_unity", "validate_presentation", "__version__"]
