import pytest

from arrcover import catalog


@pytest.fixture(scope="session")
def selberg():
    return catalog.get("selberg").arrangement


@pytest.fixture(scope="session")
def maclane_decone():
    return catalog.get("maclane-decone").arrangement


@pytest.fixture(scope="session")
def hessian_decone():
    return catalog.get("hessian-decone").arrangement


@pytest.fixture(scope="session")
def ceva3():
    return catalog.get("ceva3").arrangement


@pytest.fixture(scope="session")
def catalog_arrangements(selberg, maclane_decone, hessian_decone, ceva3):
    return {
        "selberg": selberg,
        "maclane-decone": maclane_decone,
        "hessian-decone": hessian_decone,
        "ceva3": ceva3,
    }
