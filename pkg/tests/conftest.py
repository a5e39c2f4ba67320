"""Shared fixtures for the ladscore test suite."""

import os
import sys

import numpy as np
import pytest

# Add the project root to the path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from ladscore.models import Dataset


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-dataset reproductions and seeded simulation studies")


def random_dataset(seed: int, n: int, p: int, name: str = "random") -> Dataset:
    """Continuous i.i.d. data, generic with probability one."""
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, p))
    y = x @ rng.normal(size=p) + rng.normal(size=n)
    return Dataset(x=x, y=y, name=name)


def clean_line(seed: int, n: int = 30) -> Dataset:
    """Uniform x on [0, 1] and y = 2x + 1 + N(0, 1) noise; no planted structure."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, 1.0, size=n)
    y = 2.0 * x + 1.0 + rng.normal(0.0, 1.0, size=n)
    return Dataset(x=x, y=y, name="clean")


def masking_dataset() -> Dataset:
    """Twenty points near y = 2x + 1 and two identical outliers at x = 10.5 (labels 21, 22)."""
    x = np.arange(1.0, 21.0)
    y = 2.0 * x + 1.0 + 0.3 * np.sin(1.7 * x)
    x = np.append(x, [10.5, 10.5])
    y = np.append(y, [52.0, 52.0])
    return Dataset(x=x, y=y, name="masking")


@pytest.fixture
def make_random():
    return random_dataset


@pytest.fixture
def make_clean():
    return clean_line


@pytest.fixture
def masking():
    return masking_dataset()


@pytest.fixture
def line_points():
    """(0,0), (1,1), (2,2.5)"""
    return Dataset(x=[0.0, 1.0, 2.0], y=[0.0, 1.0, 2.5])
