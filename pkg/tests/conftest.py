import pytest

from kkls import entropy


@pytest.fixture(scope="session")
def quad():
    return entropy.default_quadrature()


@pytest.fixture(scope="session")
def entropy_coeffs(quad):
    return entropy.kkls_coefficients(quad)


@pytest.fixture(scope="session")
def entropy_s(quad):
    return entropy.entropy_series(quad)
