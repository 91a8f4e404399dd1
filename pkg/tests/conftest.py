import pytest

from ssgroupoid.io import CORPUS_ACTIONS, load_action


@pytest.fixture(scope="session")
def forest():
    return load_action("forest")


@pytest.fixture(scope="session")
def actions():
    return {name: load_action(name) for name in CORPUS_ACTIONS}
