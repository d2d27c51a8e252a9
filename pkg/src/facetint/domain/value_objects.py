"""Self-validating value objects."""

from __future__ import annotations

import re
from dataclasses import dataclass, fields, replace

from facetint.domain.exceptions import InvalidInputError

_OVERRIDE_RE = re.compile(r"^\s*(?P<name>[a-z][a-z0-9]*)\s*=\s*(?P<value>\d+)\s*$")

_ALIASES = {
    "subcontraction": "subcontraction_max_vertices",
    "minor": "minor_max_vertices",
    "z3": "z3_max_vertices",
    "perturbation": "perturbation_cap",
    "gate": "gate_max_n",
    "z3sub": "z3_subgraph_max_order",
}


@dataclass(frozen=True, slots=True)
class SearchGuards:
    """Size limits for the exhaustive searches.

    Parsed overrides look like ``minor=24,z3=8``.
    """

    subcontraction_max_vertices: int = 16
    minor_max_vertices: int = 20
    z3_max_vertices: int = 10
    perturbation_cap: int = 1000
    gate_max_n: int = 8
    z3_subgraph_max_order: int = 5

    def __post_init__(self) -> None:
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise InvalidInputError(f"guard {f.name} must be positive")

    def with_overrides(self, text: str) -> SearchGuards:
        """Apply a comma-separated ``name=value`` override string."""
        changes: dict[str, int] = {}
        for chunk in filter(None, (c.strip() for c in text.split(","))):
            match = _OVERRIDE_RE.match(chunk)
            if not match:
                raise InvalidInputError(f"Invalid guard override: '{chunk}'. Expected name=value")
            name = match["name"]
            if name not in _ALIASES:
                raise InvalidInputError(
                    f"Unknown guard '{name}'. Known guards: {', '.join(sorted(_ALIASES))}"
                )
            changes[_ALIASES[name]] = int(match["value"])
        return replace(self, **changes)
