from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from circlelab.hypersurface import HypersurfaceSpec

DATA = Path(__file__).parent / "data"

settings.register_profile("lab", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("lab")


def load(name: str) -> HypersurfaceSpec:
    return HypersurfaceSpec.from_json(DATA / f"{name}.json")


@pytest.fixture
def quad2():
    return load("binary_quadric_p3")


@pytest.fixture
def quad3():
    return load("ternary_quadric_p3")


@pytest.fixture
def cubic2():
    return load("binary_cubic_p5")


@pytest.fixture
def fermat4():
    return load("fermat_cubic_p5_n4")


@pytest.fixture
def degenerate():
    return load("degenerate_x1x2_p5")
