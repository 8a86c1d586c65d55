import pytest

from gspeyer.corpus import load_corpus


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run long scale checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; pass --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def corpus16():
    return load_corpus(16)


@pytest.fixture(scope="session")
def corpus12():
    return load_corpus(12)
