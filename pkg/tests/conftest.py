import json
import logging
from pathlib import Path
from typing import Callable

import pytest

from uppertail.complexes import SimplicialComplex, boundary_of_simplex, from_facets, full_simplex
from uppertail.config import get_settings


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Fresh settings and root logging handlers for every test."""
    for key in ("UPTAIL_THREADS", "UPTAIL_LP_BACKEND", "UPTAIL_LOG_LEVEL"):
        monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
    get_settings.cache_clear()


@pytest.fixture
def edge() -> SimplicialComplex:
    return full_simplex(1)


@pytest.fixture
def triangle() -> SimplicialComplex:
    return full_simplex(2)


@pytest.fixture
def hollow_triangle() -> SimplicialComplex:
    return boundary_of_simplex(2)


@pytest.fixture
def hollow_tetrahedron() -> SimplicialComplex:
    return boundary_of_simplex(3)


@pytest.fixture
def path3() -> SimplicialComplex:
    """Two edges sharing a vertex."""
    return from_facets(3, [(0, 1), (1, 2)])


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, object], Path]:
    def write(name: str, payload: object) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return write
