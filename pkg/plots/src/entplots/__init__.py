"""Figures from entscale result tables."""

__version__ = "0.1.0"

from .reader import (
    EmptyTableError,
    MissingColumnError,
    PlotInputError,
    SchemaVersionError,
    Table,
    load_table,
)
from .render import PLOT_KINDS, PlotSpec, reference_slope, render

__all__ = [
    "__version__",
    "EmptyTableError",
    "MissingColumnError",
    "PlotInputError",
    "SchemaVersionError",
    "Table",
    "load_table",
    "PLOT_KINDS",
    "PlotSpec",
    "reference_slope",
    "render",
]
