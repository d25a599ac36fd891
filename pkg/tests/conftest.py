"""Shared fixtures for the fanobound tests."""
# this_file: tests/conftest.py

import logging

import pytest

from fanobound.chern import WeightedHypersurface, total_chern_series, variety_invariants


@pytest.fixture(autouse=True)
def reset_package_logger():
    """The CLI installs its own stderr handler; give every test a clean logger."""
    yield
    logger = logging.getLogger("fanobound")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    logger.setLevel(logging.NOTSET)
    logger.propagate = True


@pytest.fixture(autouse=True)
def clear_series_cache():
    total_chern_series.cache_clear()
    yield


@pytest.fixture
def cubic3fold():
    return WeightedHypersurface.projective(3, 3)


@pytest.fixture
def sextic3fold():
    """Degree 1 del Pezzo threefold, X_6 in P(3,2,1,1,1)."""
    return WeightedHypersurface((3, 2, 1, 1, 1), 6)


@pytest.fixture
def cubic_invariants(cubic3fold):
    return variety_invariants(cubic3fold)
