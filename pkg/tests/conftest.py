from __future__ import annotations

import pytest

from ndpm_operators.catalog import halting_machines, looping_machines


@pytest.fixture(scope="session")
def halting():
    return halting_machines()


@pytest.fixture(scope="session")
def looping():
    return looping_machines()
