"""Shared fixtures."""

import numpy as np
import pytest

from src.config import settings
from src.core import jittered_nodes, kadec_nodes, uniform_nodes


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def uniform20():
    return uniform_nodes(20)


@pytest.fixture
def kadec20():
    return kadec_nodes(20, 0.2)


@pytest.fixture
def jittered20():
    return jittered_nodes(20, 0.2, 7)


@pytest.fixture(params=["uniform", "kadec", "jittered"])
def riesz_window20(request):
    """The three Riesz-basis families at N = 20."""
    if request.param == "uniform":
        return uniform_nodes(20)
    if request.param == "kadec":
        return kadec_nodes(20, 0.2)
    return jittered_nodes(20, 0.2, 7)


@pytest.fixture
def no_log_files(monkeypatch):
    """Keep CLI runs from creating log directories."""
    monkeypatch.setattr(settings, "LOG_DIR", "")
