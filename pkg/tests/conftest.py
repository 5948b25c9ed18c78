"""Shared fixtures: the two cell complexes and the packaged configuration data."""

from __future__ import annotations

import copy
from collections.abc import Callable
from importlib import resources
from typing import Any

import pytest
import yaml

from bianchi_mod2.complexes import EquivariantComplex, build_gamma0_complex, build_sl2_complex
from bianchi_mod2.config import AuditConfig


@pytest.fixture(scope="session")
def gamma0() -> EquivariantComplex:
    return build_gamma0_complex()


@pytest.fixture(scope="session")
def sl2() -> EquivariantComplex:
    return build_sl2_complex()


@pytest.fixture(scope="session")
def fast_audit() -> AuditConfig:
    """Randomized audits small enough for unit tests."""
    return AuditConfig(samples=50, seed=2, max_height=8, word_length=3)


@pytest.fixture(scope="session")
def _packaged_cache() -> dict[str, dict[str, Any]]:
    return {}


@pytest.fixture
def packaged_yaml(_packaged_cache: dict[str, dict[str, Any]]) -> Callable[[str], dict[str, Any]]:
    """Fresh, mutable copy of a packaged data file."""

    def load(name: str) -> dict[str, Any]:
        if name not in _packaged_cache:
            text = (resources.files("bianchi_mod2") / "data" / name).read_text(encoding="utf-8")
            _packaged_cache[name] = yaml.safe_load(text)
        return copy.deepcopy(_packaged_cache[name])

    return load
