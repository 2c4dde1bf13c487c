"""Shared fixtures: canonical figure datasets are expensive enough to cache per session."""

import numpy as np
import pytest

from dirac_tunneling import figure_datasets
from dirac_tunneling.oracle import random_evanescent_grid
from dirac_tunneling.scenarios import FIGURE_IDS


@pytest.fixture(scope="session")
def figure_data():
    """Dict of all five canonical sweep datasets, computed once."""
    return {which: figure_datasets(which) for which in FIGURE_IDS}


@pytest.fixture(scope="session")
def random_grid_small():
    """2000 random evanescent points for module-level cross checks."""
    return random_evanescent_grid(2000, seed=7)


def rel_dev(x, ref):
    """Elementwise |x - ref| / |ref|, tolerating array input."""
    return np.abs(np.asarray(x) - np.asarray(ref)) / np.abs(np.asarray(ref))
