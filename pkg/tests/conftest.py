import pytest

from helpers import ATTACK_24, ATTACK_2489, corpus, ten_state_plant

from stateattack import build_attack_observer


@pytest.fixture(scope="session")
def plant():
    return ten_state_plant()


@pytest.fixture(scope="session")
def attack_24():
    return ATTACK_24


@pytest.fixture(scope="session")
def attack_2489():
    return ATTACK_2489


@pytest.fixture(scope="session")
def aobs_24(plant, attack_24):
    return build_attack_observer(plant, attack_24)


@pytest.fixture(scope="session")
def aobs_2489(plant, attack_2489):
    return build_attack_observer(plant, attack_2489)


@pytest.fixture(scope="session")
def instances():
    return corpus()
