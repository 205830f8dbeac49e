from fractions import Fraction

import pytest

from src.config import load_settings
from src.core.valuation import make_valuation, uniform_valuation
from src.models.types import CakeInstance


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-scale sweeps, enabled with RUN_SLOW_TESTS=true")


def pytest_collection_modifyitems(config, items):
    if load_settings().run_slow_tests:
        return
    skip = pytest.mark.skip(reason="set RUN_SLOW_TESTS=true to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def F(x) -> Fraction:
    return Fraction(x)


@pytest.fixture
def half_instance() -> CakeInstance:
    """Player 1 uniform; player 2 density 2 on [0, 1/2]."""
    return CakeInstance(
        players=(uniform_valuation(), make_valuation([(F(0), F("1/2"), F(2))]))
    )


@pytest.fixture
def uniform_pair() -> CakeInstance:
    return CakeInstance(players=(uniform_valuation(), uniform_valuation()))
