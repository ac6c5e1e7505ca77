"""Figures from slepianlis CSV files.

This package never recomputes any physics: every plot is drawn from
the documented CSV schemas of the slepianlis command line (eigenvalue
sweeps, DoF summaries, Slepian function tables, far-field patterns,
channel error reports), so the two packages talk only through files.
"""

__version__ = "0.1.0"

from .recipes import KINDS, FigureRecipe, SchemaError, render

__all__ = ["FigureRecipe", "KINDS", "SchemaError", "render", "__version__"]
