from __future__ import annotations

import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from orbitcone.examples import get_example

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def sl2cubed():
    return get_example("sl2cubed")


@pytest.fixture(scope="session")
def toy_triangle():
    return get_example("toy-triangle")


@pytest.fixture(scope="session")
def flag():
    return get_example("flag")


@pytest.fixture(scope="session")
def sl2_group():
    return get_example("sl2-group")
