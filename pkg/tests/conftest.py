from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from termgraph.config import Settings, use_settings
from termgraph.core import Signature, canonicalize
from termgraph.order import enumerate_canonical
from termgraph.textformat import parse_file

settings.register_profile(
    "termgraph", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.function_scoped_fixture, HealthCheck.too_slow],
)
settings.load_profile("termgraph")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

# f/2, a/0 and bottom, every canonical graph with at most three nodes
UNIVERSE_SIGNATURE = Signature({"f": 2, "a": 0})


@pytest.fixture(autouse=True)
def default_settings():
    previous = use_settings(Settings())
    yield
    use_settings(previous)


@pytest.fixture(scope="session")
def load():
    """load('cons') parses fixtures/cons.tg once per session"""
    cache = {}

    def _load(name):
        if name not in cache:
            cache[name] = parse_file(FIXTURES / f"{name}.tg")
        return cache[name]

    return _load


@pytest.fixture(scope="session")
def graph(load):
    """graph('cons', 'g2') is the canonical form of a fixture graph"""

    def _graph(name, item):
        return canonicalize(load(name).graph(item))

    return _graph


@pytest.fixture(scope="session")
def universe():
    previous = use_settings(Settings())
    try:
        return enumerate_canonical(UNIVERSE_SIGNATURE, 3, include_bot=True)
    finally:
        use_settings(previous)
