from __future__ import annotations

import pytest

from hqb import catalog


@pytest.fixture(scope="session")
def dw():
    return catalog.dwz3()


@pytest.fixture(scope="session")
def dw_twisted():
    return catalog.dwz3_twisted()


@pytest.fixture(scope="session")
def dh2():
    return catalog.dh2()


@pytest.fixture(scope="session")
def sweedler():
    return catalog.sweedler_family()
