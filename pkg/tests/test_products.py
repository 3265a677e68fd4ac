"""Truncated Euler products and their interpolation/ladder identities."""

import cmath
import math

import pytest

from selzet import (
    LengthSpectrum,
    TruncationPolicy,
    gen_binom,
    ladder_residual,
    log_Z2,
    log_Z_classic,
    log_Z_rank,
    log_ruelle,
    logderiv_Z2,
    make_entry,
    with_powers,
)
from selzet.errors import DomainError

TIGHT = TruncationPolicy(tail_tolerance=1e-14)


def empty_spec():
    return LengthSpectrum(entries=(), genus=2, norm_cutoff=2.0)


def test_classic_n4_value(spec_n4):
    # sum_n log(1 - 4^{-2-n}), brute partial-product oracle
    ref = sum(math.log(1.0 - 4.0 ** (-2 - n)) for n in range(60))
    got = log_Z_classic(2.0, spec_n4, TIGHT)
    assert abs(got.log_value - ref) < 1e-12
    assert got.tail_bound < 1e-13


def test_classic_empty_and_linearity(spec_n4):
    assert log_Z_classic(2.0, empty_spec(), TIGHT).log_value == 0
    doubled = LengthSpectrum(entries=(make_entry(4.0, 2),), genus=2,
                             norm_cutoff=5.0)
    a = log_Z_classic(2.0, spec_n4, TIGHT).log_value
    b = log_Z_classic(2.0, doubled, TIGHT).log_value
    assert b == pytest.approx(2 * a, rel=1e-15)


def test_ruelle_single_factor(spec_n4):
    got = log_ruelle(1.0, spec_n4, TIGHT)
    assert abs(got.log_value - (-math.log(0.75))) < 1e-15
    assert log_ruelle(1.5, empty_spec(), TIGHT).log_value == 0


def test_ruelle_is_classic_ratio(synthetic_spectra):
    # zeta_ruelle(s) = Z(s+1)/Z(s)
    for spec in synthetic_spectra:
        for s in (1.2, 2.0, 3.5):
            lhs = log_ruelle(s, spec, TIGHT).log_value
            rhs = (log_Z_classic(s + 1, spec, TIGHT).log_value
                   - log_Z_classic(s, spec, TIGHT).log_value)
            assert abs(lhs - rhs) < 1e-12


def test_interpolation_t0_t1(synthetic_spectra):
    for spec in synthetic_spectra:
        for s in (1.5, 2.0, 3.0):
            z0 = log_Z2(s, 0.0, spec, TIGHT).log_value
            assert abs(z0 + log_ruelle(s, spec, TIGHT).log_value) < 1e-13
            z1 = log_Z2(s, 1.0, spec, TIGHT).log_value
            assert abs(z1 - log_Z_classic(s, spec, TIGHT).log_value) < 1e-13


def test_negative_t_finite_product(synthetic_spectra):
    # Z(s,-m) = prod_{n=0..m} zeta(s+n)^{(-1)^{n-1} C(m,n)}
    for spec in synthetic_spectra:
        for m in (1, 2, 3):
            for s in (1.5, 2.5):
                lhs = log_Z2(s, -float(m), spec, TIGHT).log_value
                rhs = sum((-1.0) ** (n - 1) * math.comb(m, n)
                          * log_ruelle(s + n, spec, TIGHT).log_value
                          for n in range(m + 1))
                assert abs(lhs - rhs) < 1e-12


def test_ladder(synthetic_spectra):
    for spec in synthetic_spectra:
        for s, t in ((2.0, 1.0), (3.0, 0.5), (1.7, 2.2)):
            assert ladder_residual(s, t, spec, TIGHT) <= 1e-12


def test_second_ladder(spec_n4):
    # Z(s,t+1) = prod_{n>=0} Z(s+n,t): telescoped over a long shift range
    s, t = 2.5, 1.0
    lhs = log_Z2(s, t + 1, spec_n4, TIGHT).log_value
    rhs = sum(log_Z2(s + n, t, spec_n4, TIGHT).log_value for n in range(200))
    assert abs(lhs - rhs) < 1e-10


def test_rank_binomial_vs_direct(spec_n4):
    for r in (1, 2, 3):
        for s in (2.0, 3.0):
            a = log_Z_rank(s, r, spec_n4, TIGHT, method="binomial").log_value
            b = log_Z_rank(s, r, spec_n4, TIGHT, method="direct").log_value
            assert abs(a - b) <= 1e-10 * max(1.0, abs(a))


def test_rank_weights_are_binomials(spec_n4):
    # rank-r product weight at level n is C(r+n-1, n)
    for n in (0, 1, 4):
        assert gen_binom(3, n) == pytest.approx(math.comb(3 + n - 1, n))


def test_logderiv_vs_finite_difference(spec_n4):
    pol = TruncationPolicy(tail_tolerance=1e-14)
    spec = with_powers(spec_n4, 4.0 ** 14)
    h = 1e-4
    for t in (0.0, 1.0, 1.5):
        for s in (2.0, 2.6):
            fd = (log_Z2(s + h, t, spec, pol).log_value
                  - log_Z2(s - h, t, spec, pol).log_value) / (2 * h)
            ld = logderiv_Z2(s, t, spec, pol, order=0)
            assert abs(fd - ld) <= 1e-7 * max(1.0, abs(ld))


def test_logderiv_t0_closed_form(spec_n4):
    # m=0, t=0: sum over powers of log N(delta) N(delta)^{-s}
    pol = TruncationPolicy(tail_tolerance=1e-14)
    spec = with_powers(spec_n4, 4.0 ** 20)
    s = 2.0
    ref = sum(math.log(4.0) * (4.0 ** j) ** (-s) for j in range(1, 21))
    got = logderiv_Z2(s, 0.0, spec, pol, order=0)
    assert abs(got - ref) <= 1e-12


def test_logderiv_missing_powers_error(spec_n4):
    pol = TruncationPolicy(norm_cutoff=4.0 ** 6)
    with pytest.raises(DomainError):
        logderiv_Z2(2.0, 1.0, spec_n4, pol, order=0)


def test_convergence_guard(spec_n4):
    with pytest.raises(DomainError):
        log_Z_classic(-0.5, spec_n4)
    # boundary cases from the CLI examples must stay evaluable
    assert log_ruelle(1.0, spec_n4).log_value == pytest.approx(-math.log(0.75))


def test_truncation_policy_validation():
    with pytest.raises(DomainError):
        TruncationPolicy(tail_tolerance=0.0)
    with pytest.raises(DomainError):
        TruncationPolicy(n_cutoff=-1)
