"""Shared fixtures: the category corpus, arrow workspaces, and the pointed
workspace on the matrix fixture.  Everything is built once per session;
all structures are immutable (or only grow memoised caches), so sharing
is safe.
"""

from pathlib import Path

import pytest

from fincat import fixtures
from fincat.arrowcat import build_arr, build_pointed

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "fincat" / "data"

# fixtures whose arrow workspace is small enough for the deep (quadratic)
# law sweep inside build_arr
DEEP_ARR = ("c1", "c2", "c3", "m2", "sq")


@pytest.fixture(scope="session")
def cats():
    return {name: fixtures.get(name) for name in fixtures.ALL}


@pytest.fixture(scope="session")
def arrs(cats):
    return {name: build_arr(cats[name]) for name in DEEP_ARR}


@pytest.fixture(scope="session")
def pointed_v2(cats):
    built = build_pointed(cats["v2"])
    assert built.workspace is not None, built.reason
    return built.workspace


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR
