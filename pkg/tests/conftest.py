import functools

import pytest

from savi.group import GeneratorSet, make_backend
from savi.rng import DeterministicRng


@pytest.fixture(scope="session")
def mock_backend():
    return make_backend("mock")


@pytest.fixture(scope="session")
def ristretto_backend():
    return make_backend("ristretto255")


@functools.lru_cache(maxsize=32)
def _gens_cache(backend_name: str, dimension: int, range_slots: int) -> GeneratorSet:
    return GeneratorSet.derive(make_backend(backend_name), dimension, range_slots)


@pytest.fixture(scope="session")
def gens_factory():
    """Memoized generator sets: deriving thousands of bases is the slow
    part of setup, and they are pure functions of (backend, sizes)."""
    return _gens_cache


@pytest.fixture()
def rng():
    return DeterministicRng(b"test-rng")
