import random

import pytest

from hkbordism.manifold_catalog import HilbertData, load_chern_data, load_default_data


@pytest.fixture(scope="session")
def shipped_records():
    return load_default_data()


@pytest.fixture(scope="session")
def shipped_data(shipped_records):
    return HilbertData.from_records(shipped_records)


@pytest.fixture(scope="session")
def k3_only():
    return load_chern_data([{"n": 1, "chern_numbers": {"c2": 24}, "provenance": "K3"}])


@pytest.fixture
def rng():
    return random.Random(20261014)
