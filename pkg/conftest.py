import pytest

collect_ignore = ["examples"]


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive or large-corpus theorem sweeps")


def pytest_addoption(parser):
    parser.addoption("--skip-slow", action="store_true", default=False, help="skip tests marked slow")


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--skip-slow"):
        return
    skip = pytest.mark.skip(reason="--skip-slow given")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
