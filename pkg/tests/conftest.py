import math

import numpy as np
import pytest

from magnetic_curves.geometry.frames import ModelParams
from magnetic_curves.solutions.closedform import ClosedFormCurve, FamilySpec


@pytest.fixture(autouse=True)
def isolated_output_dir(tmp_path, monkeypatch):
    out = tmp_path / "output"
    monkeypatch.setenv("MAGNETIC_CURVES_OUTPUT_DIR", str(out))
    return out


@pytest.fixture
def g1():
    return ModelParams("g1", 1.0)


@pytest.fixture
def g2():
    return ModelParams("g2", 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def circular():
    return ClosedFormCurve(FamilySpec("g2-v4-circular"))


@pytest.fixture
def period():
    return 2.0 * math.pi
