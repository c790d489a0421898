"""
Shared fixtures. Puts backend/ on sys.path the way app.py does.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'backend'))

from utils.config import TestingConfig  # noqa: E402
from utils.data_structures import SuiteConfig  # noqa: E402
from utils.measure_core import make_simple_function  # noqa: E402


@pytest.fixture
def two_atom():
    """|f| = 2 on a set of measure 1 and 1 on another set of measure 1"""
    return make_simple_function([(1.0, 2.0), (1.0, 1.0)])


@pytest.fixture
def indicator():
    """Indicator of a set of measure 1"""
    return make_simple_function([(1.0, 1.0)])


@pytest.fixture
def zero_function():
    return make_simple_function([])


@pytest.fixture
def testing_config():
    return TestingConfig


@pytest.fixture
def suite_config():
    return SuiteConfig(suite_name='eq2-identity', trials=10, seed=42, oracle_subdivisions=20000)


@pytest.fixture(autouse=True)
def testing_environment(monkeypatch):
    monkeypatch.setenv('LORENTZ_ENV', 'testing')
