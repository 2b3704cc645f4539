"""Exact symbolic computation for the negative half of quantum affine algebras
in the imaginary Verma setting: free model, Kashiwara-type operators, the
invariant bilinear form and reduced imaginary Verma modules."""

__version__ = "0.1.0"

from .cartan import CartanData, load_cartan
from .freealg import Element, Letter
from .scalars import Coefficient, Scalar

__all__ = ["CartanData", "Coefficient", "Element", "Letter", "Scalar", "load_cartan", "__version__"]
