import pytest
from hypothesis import HealthCheck, settings

from pairsieve import build_prime_table

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def table_20k():
    return build_prime_table(20000)


@pytest.fixture(scope="session")
def table_1k():
    return build_prime_table(1000)
