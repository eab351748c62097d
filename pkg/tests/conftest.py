import pytest

from chcrown import DirichletConfig, T_REAL


@pytest.fixture(scope="session")
def config_real():
    """The configuration at the real point t = sqrt(2) - 1."""
    return DirichletConfig.build(T_REAL)


@pytest.fixture(scope="session")
def config_041():
    return DirichletConfig.build(0.41)


@pytest.fixture(scope="session")
def config_039():
    """A parameter below 2/5, where all crown circles are pairwise unlinked."""
    return DirichletConfig.build(0.39)
