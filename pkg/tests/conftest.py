# tests/conftest.py
"""Pytest configuration and shared fixtures."""

import numpy as np
import pytest


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line(
        "markers",
        "slow: marks tests as slow (e.g. exhaustive embedding certificates); use -m 'not slow' to skip",
    )


@pytest.fixture
def rng():
    """Seeded generator for randomized property checks."""
    return np.random.default_rng(20240611)
