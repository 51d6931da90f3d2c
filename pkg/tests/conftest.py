import pytest

from localp1p1.pipeline import RunConfig, get_pipeline


@pytest.fixture(scope="session")
def pipe6():
    """Shared default pipeline: weights (3,5), truncation 6, order 3."""
    return get_pipeline(RunConfig(lam=3, mu=5, trunc=6, order=3))


@pytest.fixture(scope="session")
def pipe8():
    return get_pipeline(RunConfig(lam=3, mu=5, trunc=8, order=3))


@pytest.fixture(scope="session")
def pipe5():
    return get_pipeline(RunConfig(lam=3, mu=5, trunc=5, order=3))
