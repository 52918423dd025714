from dataclasses import replace

import pytest

from trackmech.chassis import PAPER_CHASSIS
from trackmech.resistance import VehicleOperatingState
from trackmech.terrain import PAPER_SOFT_SOIL

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def soil():
    return PAPER_SOFT_SOIL


@pytest.fixture(scope="session")
def soil_kp17():
    return replace(PAPER_SOFT_SOIL, kp_override=1.7)


@pytest.fixture(scope="session")
def steer_soil():
    return replace(PAPER_SOFT_SOIL, kp_override=1.7, mu_t=0.5, f_r=0.1)


@pytest.fixture(scope="session")
def geom():
    return PAPER_CHASSIS


@pytest.fixture(scope="session")
def state30():
    return VehicleOperatingState(m=300.0, v=1.5, i=0.2, theta=30.0)


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
