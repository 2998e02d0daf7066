import pytest

from sustain5g.config import get_settings
from sustain5g.models import NetworkConfig, SimConfig


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Each test sees settings built from its own environment."""
    monkeypatch.delenv("SUSTAIN5G_THREADS", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def a1_config() -> NetworkConfig:
    """Scenario A1 with ten entities: β = 2, α = 1, N = 10, n⁻¹ = 5, Q = 1, t = [5, 105]."""
    return NetworkConfig.reference(beta=2.0, passes=1, n_entities=10)


@pytest.fixture
def half_alpha_prime_config() -> NetworkConfig:
    """α′ = α/t1 = 0.5 with E = 10, so the overhead prefactor is exactly 0.1."""
    return NetworkConfig.reference(beta=5.0, passes=1, n_entities=10)


@pytest.fixture
def small_sim() -> SimConfig:
    return SimConfig(seed=42, trials=20_000, horizon=100.0)


def pytest_addoption(parser):
    parser.addoption(
        "--update-golden",
        action="store_true",
        default=False,
        help="rewrite tests/golden/reference_sweep.csv from the current sweep output",
    )


@pytest.fixture
def update_golden(request) -> bool:
    return request.config.getoption("--update-golden")
