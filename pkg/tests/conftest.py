"""
Configuration for pytest.
"""
import os
import sys

import numpy as np
import pytest

# Add the project root to the Python path
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
sys.path.insert(0, project_root)

from mu_lab import config
from mu_lab.analysis.group import parse_group_spec
from mu_lab.models.models import Subset


@pytest.fixture
def z2_1():
    return parse_group_spec("Z2^1")


@pytest.fixture
def z2_2():
    return parse_group_spec("Z2^2")


@pytest.fixture
def z2_3():
    return parse_group_spec("Z2^3")


@pytest.fixture
def z3():
    return parse_group_spec("Z(3)")


@pytest.fixture
def z12():
    return parse_group_spec("Z(12)")


@pytest.fixture
def z2x4():
    return parse_group_spec("Z(2)xZ(4)")


@pytest.fixture
def rng():
    """Fixture to provide a seeded generator for random test data."""
    return np.random.default_rng(12345)


@pytest.fixture
def coset_z2_2(z2_2):
    """A = {0, 1} in Z2^2, a coset of a subgroup."""
    return Subset(z2_2, (0, 1))


@pytest.fixture
def restore_config():
    """Restore the module-level settings a test overrides."""
    saved = (config.DENSE_CAP, config.ORACLE_BUDGET, config.DEFAULT_WORKERS)
    yield config
    config.DENSE_CAP, config.ORACLE_BUDGET, config.DEFAULT_WORKERS = saved


@pytest.fixture
def random_subset():
    """Factory for uniform random subsets of a given size."""
    def make(g, size, generator):
        chosen = generator.choice(g.order, size=size, replace=False)
        return Subset.from_elements(g, chosen.tolist())
    return make
