"""Length-spectrum enumeration, decomposition, and file round-trips."""

import json
import math
import os
import subprocess
import sys
import warnings

import numpy as np
import pytest

from selzet import (
    EigenEntry,
    EigenSpectrum,
    GeodesicEntry,
    GroupPresentation,
    LengthSpectrum,
    class_norm,
    enumerate_classes,
    load_eigen,
    load_spectrum,
    make_entry,
    save_eigen,
    save_spectrum,
)
from selzet.errors import DomainError, SpectrumFormatError
from selzet.spectrum import primitive_decomposition


def test_class_norm_diagonal():
    M = np.diag([3.0, 1.0 / 3.0])
    assert class_norm(M) == pytest.approx(9.0, rel=1e-14)


def test_class_norm_from_trace_only():
    # conjugate matrix has the same trace, hence the same norm
    M = np.array([[2.0, 1.0], [1.0, 1.0]])
    C = np.array([[1.3, 0.2], [0.1, 0.9]])
    Mc = C @ M @ np.linalg.inv(C)
    assert class_norm(Mc) == pytest.approx(class_norm(M), rel=1e-12)


def test_class_norm_rejects_nonhyperbolic():
    with pytest.raises(DomainError):
        class_norm(np.array([[1.0, 1.0], [0.0, 1.0]]))  # parabolic
    with pytest.raises(DomainError):
        class_norm(np.array([[0.0, -1.0], [1.0, 0.0]]))  # elliptic


def test_group_presentation_validation():
    with pytest.raises(DomainError):
        GroupPresentation(generators=(np.diag([3.0, 1 / 3.0]),), genus=1)
    with pytest.raises(DomainError):
        GroupPresentation(generators=(np.diag([2.0, 1.0]),), genus=2)


def test_entry_invariants():
    with pytest.raises(DomainError):
        make_entry(0.9)  # norm must exceed 1
    with pytest.raises(DomainError):
        GeodesicEntry(norm=4.0, length=math.log(4.0), multiplicity=0,
                      primitive=True, primitive_norm=4.0, power=1)
    e = make_entry(16.0, primitive_norm=4.0, power=2)
    assert not e.primitive
    assert e.length == pytest.approx(math.log(16.0))


def test_single_generator_powers():
    M = np.array([[2.0, 1.0], [1.0, 1.0]])
    G = GroupPresentation(generators=(M,), genus=2)
    N = class_norm(M)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        spec = enumerate_classes(G, 5, N ** 5 * 1.01)
    assert len(spec.entries) == 5
    for k, e in enumerate(spec.entries, start=1):
        assert e.norm == pytest.approx(N ** k, rel=1e-10)
        assert e.power == k
        assert e.multiplicity == 2  # the class and its inverse
        assert e.primitive == (k == 1)


def test_norm_cutoff_respected(pingpong_group):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        spec = enumerate_classes(pingpong_group, 6, 500.0)
    assert spec.entries
    assert all(e.norm <= 500.0 for e in spec.entries)
    assert all(spec.entries[i].norm < spec.entries[i + 1].norm
               for i in range(len(spec.entries) - 1))


def test_conjugation_invariance(pingpong_group):
    C = np.array([[1.05, 0.1], [0.1, 1.0]])
    C /= math.sqrt(np.linalg.det(C))
    Ci = np.linalg.inv(C)
    conj = GroupPresentation(
        generators=tuple(C @ g @ Ci for g in pingpong_group.generators),
        genus=2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        a = enumerate_classes(pingpong_group, 6, 1e9)
        b = enumerate_classes(conj, 6, 1e9)
    assert len(a.entries) == len(b.entries)
    for ea, eb in zip(a.entries, b.entries):
        assert ea.multiplicity == eb.multiplicity
        assert abs(ea.norm - eb.norm) <= 1e-9 * ea.norm


def test_thread_determinism(pingpong_group):
    def run(threads):
        env_key = "SELZET_THREADS"
        old = os.environ.get(env_key)
        os.environ[env_key] = str(threads)
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                return enumerate_classes(pingpong_group, 7, 1e12)
        finally:
            if old is None:
                del os.environ[env_key]
            else:
                os.environ[env_key] = old

    base = run(1)
    for threads in (2, 4):
        other = run(threads)
        assert len(base.entries) == len(other.entries)
        for ea, eb in zip(base.entries, other.entries):
            assert ea.norm == eb.norm  # bit-identical, not just close
            assert ea.multiplicity == eb.multiplicity


def test_completeness_warning():
    M = np.array([[2.0, 1.0], [1.0, 1.0]])
    G = GroupPresentation(generators=(M,), genus=2)
    with pytest.warns(UserWarning):
        enumerate_classes(G, 2, 1e12)


def test_primitive_decomposition():
    N = 4.0
    entries = tuple(make_entry(N ** k) for k in (1, 2, 3))
    spec = LengthSpectrum(entries=entries, genus=2, norm_cutoff=70.0)
    dec = primitive_decomposition(spec)
    for k, e in enumerate(dec.entries, start=1):
        assert e.primitive_norm == pytest.approx(N, rel=1e-12)
        assert e.power == k
        assert e.primitive == (k == 1)


def test_spectrum_roundtrip(tmp_path, spec_two):
    path = tmp_path / "spec.jsonl"
    save_spectrum(spec_two, path)
    back = load_spectrum(path)
    assert back.genus == spec_two.genus
    assert back.norm_cutoff == spec_two.norm_cutoff
    assert back.entries == spec_two.entries


def test_eigen_roundtrip(tmp_path, eig_small):
    path = tmp_path / "eig.jsonl"
    save_eigen(eig_small, path)
    back = load_eigen(path)
    assert back.entries == eig_small.entries
    assert back.genus == eig_small.genus


def test_load_rejects_wrong_kind(tmp_path, spec_two):
    path = tmp_path / "spec.jsonl"
    save_spectrum(spec_two, path)
    with pytest.raises(SpectrumFormatError):
        load_eigen(path)


def test_load_reports_line_number(tmp_path, spec_two):
    path = tmp_path / "spec.jsonl"
    save_spectrum(spec_two, path)
    lines = path.read_text().splitlines()
    lines[1] = '{"norm": "not-a-number"}'
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(SpectrumFormatError) as info:
        load_spectrum(path)
    assert info.value.line_number == 2


def test_eigen_spectrum_validation():
    with pytest.raises(DomainError):
        EigenSpectrum(entries=(EigenEntry(-0.5, 1),), genus=2)
    with pytest.raises(DomainError):
        EigenEntry(1.0, 0)
