"""Domain exception hierarchy."""

from __future__ import annotations


class FacetintError(Exception):
    """Base exception for the entire library."""


class UnknownVertexError(FacetintError):
    """A vertex id does not belong to the graph or drawing at hand."""


class UnknownEdgeError(FacetintError):
    """An edge id does not belong to the graph at hand."""


class LoopContractionError(FacetintError):
    """Contraction of a loop edge was requested."""


class InvalidInputError(FacetintError):
    """Input violates the preconditions of an operation."""


class FormatError(InvalidInputError):
    """A text file does not follow its documented line format."""


class DrawingError(InvalidInputError):
    """A drawing or combinatorial map is geometrically or structurally invalid."""


class SurgeryError(FacetintError):
    """A normalization surgery was applied at a site of the wrong kind."""


class ColoringError(FacetintError):
    """A face coloring is improper or a coloring potential is inconsistent."""


class NotZ3ConnectedError(FacetintError):
    """A vertex set claimed to span a Z3-connected subgraph does not."""


class CertificateError(FacetintError):
    """A decision certificate is malformed."""


class GuardExceededError(FacetintError):
    """An exhaustive search was refused because its input exceeds a size guard."""
