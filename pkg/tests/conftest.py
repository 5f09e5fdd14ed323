import numpy as np
import pytest

from halphen.precision import DOUBLE_BITS, working_precision
from halphen.targets import Power


@pytest.fixture(autouse=True)
def double_precision(monkeypatch):
    """Every test starts at 53 bits regardless of the caller's environment."""
    monkeypatch.delenv("HALPHEN_PRECISION_BITS", raising=False)
    with working_precision(DOUBLE_BITS):
        yield


@pytest.fixture
def power():
    return Power


def ulps(a, b):
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    scale = np.maximum(np.abs(a), np.abs(b))
    return np.abs(a - b) / (np.spacing(np.maximum(scale, np.finfo(float).tiny)))
