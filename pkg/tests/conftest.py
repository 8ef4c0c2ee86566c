from __future__ import annotations

import pytest

from hallforge import ClassRegistry
from hallforge.quivers import line_quiver


@pytest.fixture(scope="session")
def a1_f2() -> ClassRegistry:
    return ClassRegistry(line_quiver(1), 2)


@pytest.fixture(scope="session")
def a1_f3() -> ClassRegistry:
    return ClassRegistry(line_quiver(1), 3)


@pytest.fixture(scope="session")
def a2_f2() -> ClassRegistry:
    return ClassRegistry(line_quiver(2), 2)


@pytest.fixture(scope="session")
def a2_f3() -> ClassRegistry:
    return ClassRegistry(line_quiver(2), 3)
