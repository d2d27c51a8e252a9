"""Face colorings of graph drawings and nowhere-zero 3-flows."""

__version__ = "0.1.0"
