import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from biconic.conic import TernaryQuadraticForm
from biconic.specfile import load_spec
from biconic.surface import SurfacePoint, build_surface

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, name)


@pytest.fixture(scope="session")
def gbsp():
    """The paper-dp2 surface w^2 = x^4 + 4x^2y^2 + z^4."""
    return load_spec(fixture_path("paper-dp2.surface")).build()


@pytest.fixture(scope="session")
def gbsp_seed():
    return SurfacePoint(0, 1, 1, -1)


@pytest.fixture(scope="session")
def smooth1():
    return load_spec(fixture_path("smooth-fixture-1.surface")).build()


@pytest.fixture(scope="session")
def smooth1_seed():
    return SurfacePoint(0, 0, 1, -1)
