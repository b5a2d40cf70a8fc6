import pytest

from teachlab.budget import Budget


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: full-scale random experiments (deselect with -m "not slow")')


@pytest.fixture(autouse=True)
def fresh_budget():
    Budget.reset()
    yield
    Budget.reset()
