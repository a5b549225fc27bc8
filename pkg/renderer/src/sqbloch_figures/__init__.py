"""Figure rendering for sqbloch CSV outputs."""

from .figures import FigureSpec, RenderError, SchemaError, render

__version__ = "0.1.0"
