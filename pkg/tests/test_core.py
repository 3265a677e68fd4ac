"""Foundation layer: log-gamma, Beta, Hurwitz zeta, generalized binomials."""

import cmath
import math
import random

import mpmath
import pytest

from selzet import SeriesControl, gen_binom, hurwitz_zeta, hurwitz_zeta_zderiv
from selzet.core import beta, log_gamma, quad_realline
from selzet.errors import DomainError, PoleError

mpmath.mp.dps = 40


def test_log_gamma_matches_mpmath():
    rng = random.Random(7)
    for _ in range(40):
        z = complex(rng.uniform(-8, 8), rng.uniform(-8, 8))
        if abs(z.imag) < 0.2 and z.real < 0.5:
            continue
        ref = complex(mpmath.loggamma(z))
        assert abs(log_gamma(z) - ref) <= 1e-11 * max(1.0, abs(ref))


def test_log_gamma_pole():
    for z in (0.0, -1.0, -7.0):
        with pytest.raises(PoleError):
            log_gamma(z)


def test_beta_values_and_symmetry():
    assert abs(beta(1.0, 1.0) - 1.0) < 1e-14
    assert abs(beta(2.0, 3.0) - 1.0 / 12.0) < 1e-14
    rng = random.Random(11)
    for _ in range(20):
        a = complex(rng.uniform(0.2, 4), rng.uniform(-2, 2))
        b = complex(rng.uniform(0.2, 4), rng.uniform(-2, 2))
        assert abs(beta(a, b) - beta(b, a)) < 1e-13 * max(1.0, abs(beta(a, b)))


def test_hurwitz_zeta_convergent_region():
    # direct comparison against mpmath.zeta(z, a) for real a > 0
    for z in (2.0, 3.5, 2.0 + 1.5j, 5.0 - 2.0j):
        for a in (0.3, 1.0, 2.7):
            ref = complex(mpmath.zeta(z, a))
            assert abs(hurwitz_zeta(z, a) - ref) <= 1e-11 * max(1.0, abs(ref))


def test_hurwitz_zeta_continued_region():
    # Euler-Maclaurin continuation to Re z < 1, including negative Re z
    for z in (0.5, -0.5, -1.5 + 1.0j, 0.25 + 2.0j):
        for a in (0.4, 1.3, 2.2):
            ref = complex(mpmath.zeta(z, a))
            assert abs(hurwitz_zeta(z, a) - ref) <= 1e-9 * max(1.0, abs(ref))


def test_hurwitz_zeta_complex_base():
    # complex second argument (the spectral routes use a = s - 1/2 +- i r)
    for a in (1.5 + 0.7j, 0.8 - 1.2j):
        for z in (2.5, 3.0 + 1.0j):
            ref = complex(mpmath.zeta(z, a))
            assert abs(hurwitz_zeta(z, a) - ref) <= 1e-10 * max(1.0, abs(ref))


def test_hurwitz_zeta_recurrence():
    # zeta(z,a) - zeta(z,a+1) = a^{-z}
    rng = random.Random(3)
    for _ in range(25):
        z = complex(rng.uniform(-2, 4), rng.uniform(-3, 3))
        a = complex(rng.uniform(0.3, 3), rng.uniform(-1, 1))
        lhs = hurwitz_zeta(z, a) - hurwitz_zeta(z, a + 1)
        rhs = cmath.exp(-z * cmath.log(a))
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


def test_hurwitz_zeta_pole_at_one():
    with pytest.raises(PoleError):
        hurwitz_zeta(1.0, 2.0)


def test_hurwitz_zderiv_matches_mpmath():
    # d/dz zeta(z, a) at z0, against mpmath numerical derivative
    for z0, a in ((0.0, 1.0), (0.0, 2.5), (2.0, 1.7), (-0.5, 0.8)):
        ref = complex(mpmath.diff(lambda z: mpmath.zeta(z, a), z0))
        got = hurwitz_zeta_zderiv(z0, a)
        assert abs(got - ref) <= 1e-7 * max(1.0, abs(ref))


def test_hurwitz_zderiv_lerch_anchor():
    # zeta'(0, a) = log Gamma(a) - (1/2) log 2 pi
    for a in (1.0, 1.5, 3.2):
        ref = complex(mpmath.loggamma(a)) - 0.5 * math.log(2 * math.pi)
        assert abs(hurwitz_zeta_zderiv(0.0, a) - ref) <= 1e-9


def test_gen_binom_integer_cases():
    # gen_binom(t, k) = C(t+k-1, k)
    assert gen_binom(5, 2) == pytest.approx(15.0)
    assert gen_binom(0, 0) == pytest.approx(1.0)
    assert abs(gen_binom(0, 3)) < 1e-15  # t=0 kills every k >= 1
    assert gen_binom(2, 5) == pytest.approx(6.0)
    assert abs(gen_binom(-1, 3)) < 1e-15
    assert gen_binom(-2, 1) == pytest.approx(-2.0)
    with pytest.raises(DomainError):
        gen_binom(1.0, -1)


def test_gen_binom_pascal():
    # C(t+k-1,k) = C(t+k-2,k) + C(t+k-2,k-1)
    rng = random.Random(5)
    for _ in range(30):
        t = complex(rng.uniform(-3, 3), rng.uniform(-2, 2))
        k = rng.randint(1, 8)
        lhs = gen_binom(t, k)
        rhs = gen_binom(t - 1, k) + gen_binom(t, k - 1)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_quad_realline_known_integral():
    # int dy / (1+y^2)^2 = pi/2, decay exponent -4
    got = quad_realline(lambda y: 1.0 / (1.0 + y * y) ** 2, -4.0)
    assert abs(got - math.pi / 2) < 1e-9


def test_quad_realline_decay_guard():
    with pytest.raises(DomainError):
        quad_realline(lambda y: 1.0 / (1.0 + y * y), -1.5)


def test_series_control_validation():
    with pytest.raises(DomainError):
        SeriesControl(max_terms=0)
    with pytest.raises(DomainError):
        SeriesControl(tail_tolerance=-1.0)
