import numpy as np
import pytest

from raqr import table1_preset
from raqr.chain import with_overrides
from raqr.config import TABLE2
from raqr.constants import TWO_PI


@pytest.fixture(scope="session")
def table1():
    return table1_preset()


@pytest.fixture(scope="session")
def vapor(table1):
    return table1[0]


@pytest.fixture(scope="session")
def laser(table1):
    return table1[1]


@pytest.fixture(scope="session")
def chain(table1):
    return table1[2]


def detunings_mhz(scheme: str, transition: str = "47D5/2-48P3/2"):
    """Jointly optimized detunings (rad/s, angular) of a reference row."""
    _, _, _, _, dps, dcs, dls = TABLE2[transition]
    i = ("DIOD", "BCOD").index(scheme)
    return (TWO_PI * dps[i] * 1e6, TWO_PI * dcs[i] * 1e6, TWO_PI * dls[i] * 1e6)


@pytest.fixture(scope="session")
def laser_diod_opt(laser):
    dp, dc, dl = detunings_mhz("DIOD")
    return with_overrides(laser, detuning_p=dp, detuning_c=dc, detuning_l=dl)


@pytest.fixture(scope="session")
def laser_bcod_opt(laser):
    dp, dc, dl = detunings_mhz("BCOD")
    return with_overrides(laser, detuning_p=dp, detuning_c=dc, detuning_l=dl)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(2024)
