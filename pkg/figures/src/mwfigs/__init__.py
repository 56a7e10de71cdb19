"""Plot renderer for mwgates scenario CSV datasets."""

from .plots import SCHEMAS, PlotSpec, SchemaError, build_figure, load_table, render

__version__ = "0.1.0"
