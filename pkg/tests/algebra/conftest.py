import json
from fractions import Fraction

import pytest

from volterra.config import reload_settings
from volterra.services.algebra import from_upper, symmetric_algebra
from volterra.services.structure import canonical_associative


F = Fraction


@pytest.fixture(scope="session")
def symmetric3():
    return symmetric_algebra(3)


@pytest.fixture(scope="session")
def case_a():
    """p_12,1 = 1/2 and p_13,1 = p_23,2 = 1/4"""
    return from_upper(3, {(1, 2): F(1, 2), (1, 3): F(1, 4), (2, 3): F(1, 4)})


@pytest.fixture(scope="session")
def cyclic3():
    """p_12,1 = p_23,2 = p_31,3 = 1"""
    return from_upper(3, {(1, 2): 1, (2, 3): 1, (1, 3): 0})


@pytest.fixture(scope="session")
def canonical3():
    return canonical_associative(3)


@pytest.fixture()
def algebra_file(tmp_path):
    """Write an algebra document and return its path"""
    def write(document, name="algebra.json"):
        path = tmp_path / name
        text = document if isinstance(document, str) else json.dumps(document)
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


@pytest.fixture()
def fresh_settings(monkeypatch):
    """Reload settings after env changes; restores defaults afterwards"""
    yield lambda: reload_settings()
    monkeypatch.undo()
    reload_settings()
