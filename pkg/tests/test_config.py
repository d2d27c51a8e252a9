from __future__ import annotations

import pytest
from pydantic import ValidationError

from facetint.domain.exceptions import InvalidInputError
from facetint.domain.value_objects import SearchGuards
from facetint.infrastructure.config import Settings


def test_defaults(settings):
    assert settings.log_level == "WARNING"
    assert settings.search_guards() == SearchGuards()


def test_guard_fields_come_from_the_environment(monkeypatch):
    monkeypatch.setenv("FACETINT_Z3_MAX_VERTICES", "7")
    assert Settings(_env_file=None).search_guards().z3_max_vertices == 7


def test_guard_string_overrides_the_fields(monkeypatch):
    monkeypatch.setenv("FACETINT_MINOR_MAX_VERTICES", "12")
    monkeypatch.setenv("FACETINT_GUARDS", "minor=24,z3=8")
    guards = Settings(_env_file=None).search_guards()
    assert guards.minor_max_vertices == 24
    assert guards.z3_max_vertices == 8


def test_malformed_guard_string(monkeypatch):
    monkeypatch.setenv("FACETINT_GUARDS", "minor=x")
    with pytest.raises(InvalidInputError, match="Invalid guard override"):
        Settings(_env_file=None).search_guards()


def test_non_positive_guard_field_is_rejected(monkeypatch):
    monkeypatch.setenv("FACETINT_Z3_MAX_VERTICES", "0")
    with pytest.raises(ValidationError):
        Settings(_env_file=None)


# ── Overrides ──────────────────────────────────────────────────────────────


def test_with_overrides_ignores_blank_chunks():
    guards = SearchGuards().with_overrides(" gate=5 , ,z3sub=3")
    assert guards.gate_max_n == 5
    assert guards.z3_subgraph_max_order == 3


def test_unknown_guard_names_are_listed():
    with pytest.raises(InvalidInputError, match="Known guards"):
        SearchGuards().with_overrides("speed=3")


def test_zero_override_is_rejected():
    with pytest.raises(InvalidInputError, match="must be positive"):
        SearchGuards().with_overrides("minor=0")
