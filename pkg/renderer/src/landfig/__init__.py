"""Figure rendering for the solver's CSV artifacts."""

from .figures import KINDS, FigureSpec, RenderReport, SchemaMismatch, render

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "FigureSpec",
    "RenderReport",
    "SchemaMismatch",
    "render",
    "__version__",
]
