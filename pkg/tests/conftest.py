# tests/conftest.py
"""Shared fixtures: small algebras and cached catalog instances."""

import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from components.catalog import build  # noqa: E402
from utils.complex_structures import pairs_structure  # noqa: E402
from utils.lie_algebra import default_labels, lie_algebra  # noqa: E402


@pytest.fixture
def h3():
    """Heisenberg algebra [e1, e2] = e3."""
    return lie_algebra(3, {(0, 1): {2: 1}})


@pytest.fixture
def kodaira_algebra():
    """R x_rot h_3 on e0..e3: [e1,e2] = e3, [e0,e1] = e2, [e0,e2] = -e1."""
    return lie_algebra(
        4,
        {(1, 2): {3: 1}, (0, 1): {2: 1}, (0, 2): {1: -1}},
        default_labels(4, start=0),
    )


@pytest.fixture
def kodaira_J():
    """J e0 = e3, J e1 = e2."""
    return pairs_structure(4, [(0, 3), (1, 2)])


@pytest.fixture
def aff_r():
    """aff(R): [e1, e2] = e2."""
    return lie_algebra(2, {(0, 1): {1: 1}})


_INSTANCES = {}


@pytest.fixture
def catalog_instance():
    """Build catalog entries once per test session."""

    def get(name, **params):
        key = (name, tuple(sorted(params.items())))
        if key not in _INSTANCES:
            _INSTANCES[key] = build(name, params)
        return _INSTANCES[key]

    return get
