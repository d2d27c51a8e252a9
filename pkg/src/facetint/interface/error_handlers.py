"""Translate domain errors into process exit codes and stderr diagnostics."""

from __future__ import annotations

import logging
import sys
from typing import TextIO

from facetint.domain.exceptions import (
    CertificateError,
    DrawingError,
    FacetintError,
    FormatError,
    GuardExceededError,
    InvalidInputError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_GUARD = 4

# First match wins, so subclasses come before their bases.
_EXCEPTION_EXIT: list[tuple[type[FacetintError], int]] = [
    (GuardExceededError, EXIT_GUARD),
    (FormatError, EXIT_INVALID),
    (DrawingError, EXIT_INVALID),
    (InvalidInputError, EXIT_INVALID),
    (CertificateError, EXIT_INVALID),
    (FacetintError, EXIT_INVALID),
]


def exit_code_for(exc: FacetintError) -> int:
    for exc_type, code in _EXCEPTION_EXIT:
        if isinstance(exc, exc_type):
            return code
    return EXIT_INVALID


def handle_error(exc: FacetintError, stream: TextIO | None = None) -> int:
    """Log ``exc``, print it on the error stream and return its exit code."""
    logger.warning("%s: %s", type(exc).__name__, exc)
    print(f"facetint: error: {exc}", file=stream or sys.stderr)
    return exit_code_for(exc)
