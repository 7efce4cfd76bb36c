import pytest

from curvedcomb import (
    ArcProfile,
    DriveModel,
    GapState,
    MechanicalModel,
)

# Reference cell used throughout: R = 100 um, phi = 0.2 rad (arc 20 um),
# h = 2 um, rest gap 2 um, m = 2.6e-10 kg, k = 1 N/m, N = 21 fingers, 1 V drive.
STD_R = 100e-6
STD_PHI = 0.2
STD_H = 2e-6
STD_GAP = 2e-6


@pytest.fixture
def profile() -> ArcProfile:
    return ArcProfile(STD_R, STD_PHI, STD_H)


@pytest.fixture
def gap() -> GapState:
    return GapState(STD_GAP)


@pytest.fixture
def mech() -> MechanicalModel:
    return MechanicalModel(2.6e-10, 1.0, 21)


@pytest.fixture
def drive() -> DriveModel:
    return DriveModel(1.0)
