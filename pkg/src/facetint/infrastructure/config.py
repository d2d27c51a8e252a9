"""Application configuration loaded from environment variables."""

from __future__ import annotations

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from facetint.domain.value_objects import SearchGuards


class Settings(BaseSettings):
    """Central configuration loaded from ``FACETINT_*`` env vars (or ``.env`` file)."""

    model_config = SettingsConfigDict(
        env_prefix="FACETINT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_level: str = "WARNING"
    guards: str = ""
    subcontraction_max_vertices: int = Field(default=16, gt=0)
    minor_max_vertices: int = Field(default=20, gt=0)
    z3_max_vertices: int = Field(default=10, gt=0)
    perturbation_cap: int = Field(default=1000, gt=0)
    gate_max_n: int = Field(default=8, gt=0)
    z3_subgraph_max_order: int = Field(default=5, gt=0)

    def search_guards(self) -> SearchGuards:
        """Guards from the individual fields, then the ``guards`` override string."""
        base = SearchGuards(
            subcontraction_max_vertices=self.subcontraction_max_vertices,
            minor_max_vertices=self.minor_max_vertices,
            z3_max_vertices=self.z3_max_vertices,
            perturbation_cap=self.perturbation_cap,
            gate_max_n=self.gate_max_n,
            z3_subgraph_max_order=self.z3_subgraph_max_order,
        )
        return base.with_overrides(self.guards)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return the singleton application settings (cached after first call)."""
    return Settings()
