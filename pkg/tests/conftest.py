import numpy as np
import pytest

from selzet import (
    EigenEntry,
    EigenSpectrum,
    GroupPresentation,
    LengthSpectrum,
    make_entry,
)


@pytest.fixture
def spec_n4():
    """Single primitive class of norm 4."""
    return LengthSpectrum(entries=(make_entry(4.0),), genus=2, norm_cutoff=5.0)


@pytest.fixture
def spec_two():
    return LengthSpectrum(entries=(make_entry(4.0), make_entry(9.0)),
                          genus=2, norm_cutoff=10.0)


@pytest.fixture
def synthetic_spectra(spec_n4, spec_two):
    golden = LengthSpectrum(entries=(make_entry(6.854101966249685, 2),),
                            genus=3, norm_cutoff=7.0)
    return [spec_n4, spec_two, golden]


@pytest.fixture
def eig_small():
    return EigenSpectrum(entries=(EigenEntry(0.25, 1), EigenEntry(2.0, 2)),
                         genus=2)


@pytest.fixture
def pingpong_group():
    """Free ping-pong pair: no accidental parabolic or elliptic words."""
    A = np.array([[3.0, 0.0], [0.0, 1.0 / 3.0]])
    B = np.array([[5.0 / 3.0, 4.0 / 3.0], [4.0 / 3.0, 5.0 / 3.0]])
    return GroupPresentation(generators=(A, B), genus=2)
