"""Solver and dynamic-transition analysis for the Curie-Weiss
Widom-Rowlinson model (spins with holes, repulsion between opposite signs).
"""

__version__ = "0.1.0"

from .simplex import AprioriParams, Measure3, ModelParams, XmCoords, from_xm, to_xm

__all__ = [
    "AprioriParams",
    "Measure3",
    "ModelParams",
    "XmCoords",
    "from_xm",
    "to_xm",
    "__version__",
]
