"""Binomial Hurwitz zeta, two-variable gamma, and multiple sine.

The central object is

    zeta_t(z, s) = sum_{k>=0} C(t+k-1, k) (k+s)^(-z),

convergent for Re z > Re t and continued in z everywhere else.  Three
routes are provided and cross-checked against each other:

* ``zeta_t_series`` -- direct summation in the convergence region;
* ``zeta_t_int``    -- exact reduction to classical Hurwitz zetas for
  integer t (finite binomial sum for t <= 0);
* ``zeta_t_cont``   -- continuation by splitting the Mellin integral of
  e^(-s x) (1-e^(-x))^(-t) at x=1: the [0,1] piece is expanded as a power
  series giving explicit pole terms beta_m/(z-t+m), the [1,inf) piece is
  an entire function evaluated by quadrature.

The z-derivative of zeta_t at z=0 defines log Gamma(s,t); the multiple
sine S(s,n) is a reflection combination of two of these.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, special

from .core import (DEFAULT_CONTROL, EULER_GAMMA, SeriesControl, _hurwitz_pair,
                   gen_binom, log_gamma)
from .errors import ConvergenceError, DomainError, PoleError

#: order of the power-series pole extraction at x=0
DEFAULT_POLE_TERMS = 40

#: generous term budget for direct series summation
SERIES_CONTROL = SeriesControl(max_terms=2_000_000, tail_tolerance=1e-12)

_INT_TOL = 1e-12


def _as_int(t) -> int | None:
    """Round t to an integer if it is one to within tolerance, else None."""
    t = complex(t)
    if abs(t.imag) > _INT_TOL:
        return None
    n = round(t.real)
    return n if abs(t.real - n) <= _INT_TOL else None


# ---------------------------------------------------------------------------
# power-series machinery for the pole coefficients


def _series_log1(a: np.ndarray) -> np.ndarray:
    """log of a power series with a[0] = 1."""
    n = len(a)
    out = np.zeros(n, dtype=complex)
    for m in range(1, n):
        acc = a[m]
        for k in range(1, m):
            acc -= (k / m) * out[k] * a[m - k]
        out[m] = acc
    return out


def _series_exp(b: np.ndarray) -> np.ndarray:
    """exp of a power series with b[0] = 0."""
    n = len(b)
    out = np.zeros(n, dtype=complex)
    out[0] = 1.0
    for m in range(1, n):
        acc = 0j
        for k in range(1, m + 1):
            acc += k * b[k] * out[m - k]
        out[m] = acc / m
    return out


def theta_pole_coeffs(s, t, M: int = DEFAULT_POLE_TERMS) -> np.ndarray:
    """Coefficients beta_0..beta_M of x^(m-t) in e^(-s x) (1-e^(-x))^(-t).

    Equivalently the Taylor coefficients of e^(-s x) (x/(1-e^(-x)))^t,
    computed by power-series log/exp composition.
    """
    s, t = complex(s), complex(t)
    n = M + 1
    # (1 - e^-x)/x = sum (-1)^k x^k / (k+1)!
    a = np.array([(-1.0) ** k / math.factorial(k + 1) for k in range(n)],
                 dtype=complex)
    la = _series_log1(a)
    expo = -t * la
    expo[1] += -s
    return _series_exp(expo)


# ---------------------------------------------------------------------------
# continuation representation


@dataclass(frozen=True)
class ContinuationRep:
    """Splitting representation Gamma(z) zeta_t(z,s) = sum_m beta_m/(z-t+m) + E(z).

    ``pole_coefficients`` lists (m, beta_m); ``entire_part`` evaluates E(z)
    (holomorphic) by quadrature over [split_point, inf).
    """

    s: complex
    t: complex
    pole_coefficients: tuple
    entire_part: Callable[[complex], complex] = field(repr=False)
    split_point: float = 1.0

    def mellin(self, z: complex) -> complex:
        """F(z) = sum_m beta_m/(z-t+m) + E(z); poles at z = t-m."""
        z = complex(z)
        acc = complex(self.entire_part(z))
        for m, b in self.pole_coefficients:
            acc += b / (z - self.t + m)
        return acc

    def mellin_regular(self, z: complex, skip_m: int) -> complex:
        """F(z) minus the beta_{skip_m}/(z-t+skip_m) pole term."""
        z = complex(z)
        acc = complex(self.entire_part(z))
        for m, b in self.pole_coefficients:
            if m != skip_m:
                acc += b / (z - self.t + m)
        return acc


def continuation_rep(s, t, M: int = DEFAULT_POLE_TERMS,
                     quad_tol: float = 1e-13) -> ContinuationRep:
    """Build the integral-splitting continuation of zeta_t(., s)."""
    s, t = complex(s), complex(t)
    if s.real <= 0:
        raise DomainError(
            "continuation requires Re s > 0 (use the integer-t reduction "
            "zeta_t_int for arguments left of the imaginary axis)")
    betas = theta_pole_coeffs(s, t, M)

    def entire_part(z: complex) -> complex:
        z = complex(z)

        def f(x, pick):
            w = cmath.exp(-s * x + (z - 1) * math.log(x)) \
                / (1.0 - math.exp(-x)) ** complex(t)
            return w.real if pick == 0 else w.imag

        with warnings.catch_warnings():
            # roundoff chatter near machine precision; accuracy is enforced
            # by the series/integer-path cross checks instead
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            re, _ = integrate.quad(f, 1.0, np.inf, args=(0,), epsabs=quad_tol,
                                   epsrel=0.0, limit=300)
            im, _ = integrate.quad(f, 1.0, np.inf, args=(1,), epsabs=quad_tol,
                                   epsrel=0.0, limit=300)
        return complex(re, im)

    poles = tuple((m, complex(betas[m])) for m in range(M + 1))
    return ContinuationRep(s=s, t=t, pole_coefficients=poles,
                           entire_part=entire_part)


def _inv_gamma(z: complex) -> complex:
    """1/Gamma(z), entire; reflection form on the left half plane."""
    z = complex(z)
    if z.real < 0.5:
        return cmath.sin(math.pi * z) / math.pi * cmath.exp(log_gamma(1 - z))
    return cmath.exp(-log_gamma(z))


# ---------------------------------------------------------------------------
# the three evaluation routes


def _series_tail(z: complex, s: complex, t: complex, K: int):
    """Euler-Maclaurin estimate of sum_{k>=K} gen_binom(t,k)(k+s)^(-z).

    Treats the summand as the smooth f(x) = Gamma(t+x)/(Gamma(t)Gamma(x+1))
    * (x+s)^(-z):  tail ~ int_K^inf f + f(K)/2 - f'(K)/12, with the size of
    the next correction returned as the error estimate.
    """
    lg_t = log_gamma(t)

    def logf(x):
        return special.loggamma(t + x) - lg_t - special.loggamma(x + 1.0) \
            - z * np.log(x + s)

    def f(x, pick):
        w = np.exp(logf(x))
        return w.real if pick == 0 else w.imag

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        re, _ = integrate.quad(f, K, np.inf, args=(0,), epsabs=1e-14,
                               epsrel=1e-12, limit=300)
        im, _ = integrate.quad(f, K, np.inf, args=(1,), epsabs=1e-14,
                               epsrel=1e-12, limit=300)
    fK = complex(np.exp(logf(K)))
    dlog = complex(special.psi(complex(t + K)) - special.psi(K + 1.0)
                   - z / (K + s))
    tail = complex(re, im) + fK / 2 - fK * dlog / 12
    err = abs(fK) * abs(dlog) ** 3 / 720 * 10
    return tail, err


def zeta_t_series(z, s, t, ctrl: SeriesControl = SERIES_CONTROL) -> complex:
    """Direct sum of the defining series; needs Re z > Re t.

    Slowly converging cases are finished off with an Euler-Maclaurin tail
    correction so the absolute error stays below ctrl.tail_tolerance.
    """
    z, s, t = complex(z), complex(s), complex(t)
    if z.real <= t.real:
        raise ConvergenceError(
            f"series diverges: Re z = {z.real} <= Re t = {t.real}")
    decay = z.real - t.real  # remainder after K terms ~ K^-decay / Gamma(t)
    try:
        gamma_t = abs(cmath.exp(log_gamma(t)))
    except PoleError:
        gamma_t = math.inf  # nonpositive-integer t: finite sum, no tail
    total = 0j
    chunk = 8192
    k0 = 0
    prev = 1.0 + 0j  # carries gen_binom(t, k) across chunks
    while k0 < ctrl.max_terms:
        k = np.arange(k0, k0 + chunk)
        ratios = np.empty(chunk, dtype=complex)
        ratios[0] = 1.0 if k0 == 0 else (t + k0 - 1) / k0
        ratios[1:] = (t + k[1:] - 1) / k[1:]
        coeffs = prev * np.cumprod(ratios)
        total += np.sum(coeffs * np.exp(-z * np.log(k + s)))
        prev = coeffs[-1]
        k0 += chunk
        if gamma_t == math.inf:
            if k0 > -t.real + 1:  # nonpositive-integer t: finite sum done
                return complex(total)
            continue
        bound = (k0 ** (-decay)) / (gamma_t * decay)
        if abs(bound) < ctrl.tail_tolerance:
            return complex(total)
        if k0 >= 2 * chunk:
            tail, err = _series_tail(z, s, t, k0)
            if err < ctrl.tail_tolerance:
                return complex(total + tail)
    raise ConvergenceError(
        f"zeta_t_series: tail not below {ctrl.tail_tolerance} within "
        f"{ctrl.max_terms} terms", estimate=complex(total))


def binom_poly_coeffs(s, n: int) -> np.ndarray:
    """c_j with gen_binom(n, k) = sum_j c_j (k+s)^j, for integer n >= 1.

    Obtained by expanding prod_{i=1}^{n-1} ((k+s) + (i-s)) / (n-1)!.
    """
    s = complex(s)
    coeffs = np.array([1.0 + 0j])
    for i in range(1, n):
        coeffs = np.convolve(coeffs, np.array([i - s, 1.0 + 0j]))
    return coeffs / math.factorial(n - 1)


def zeta_t_int(z, s, n: int, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """zeta_n(z,s) for integer n, via Hurwitz zetas (n >= 1) or the exact
    finite binomial sum (n <= 0)."""
    z, s = complex(z), complex(s)
    n = int(n)
    if n <= 0:
        acc = 0j
        for k in range(-n + 1):
            acc += gen_binom(n, k) * cmath.exp(-z * cmath.log(k + s))
        return acc
    for j in range(n):
        if abs(z - j - 1) < 1e-10:
            raise PoleError(
                f"zeta_t_int: constituent Hurwitz zeta poles at z={j + 1}",
                location=j + 1)
    coeffs = binom_poly_coeffs(s, n)
    acc = 0j
    for j, c in enumerate(coeffs):
        acc += c * _hurwitz_pair(z - j, s, ctrl)[0]
    return acc


def zeta_t_int_zderiv(z, s, n: int, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """d/dz zeta_n(z,s) for integer n, same reduction as zeta_t_int."""
    z, s = complex(z), complex(s)
    n = int(n)
    if n <= 0:
        acc = 0j
        for k in range(-n + 1):
            lg = cmath.log(k + s)
            acc += gen_binom(n, k) * (-lg) * cmath.exp(-z * lg)
        return acc
    coeffs = binom_poly_coeffs(s, n)
    acc = 0j
    for j, c in enumerate(coeffs):
        acc += c * _hurwitz_pair(z - j, s, ctrl)[1]
    return acc


def zeta_t_cont(z, s, t, ctrl: SeriesControl = DEFAULT_CONTROL,
                rep: ContinuationRep | None = None,
                M: int = DEFAULT_POLE_TERMS) -> complex:
    """Analytic continuation of zeta_t(z,s) by integral splitting.

    Surviving poles sit at z = t - m (m = 0..M) whenever that point is not
    a nonpositive integer; at nonpositive integers the zero of 1/Gamma(z)
    either cancels the pole (finite value) or forces a zero.
    """
    z, s, t = complex(z), complex(s), complex(t)
    if rep is None:
        rep = continuation_rep(s, t, M=M)
    m_star = None
    for m, b in rep.pole_coefficients:
        if abs(z - t + m) < 1e-9:
            m_star = m
            break
    q = round(z.real)
    at_nonpos_int = abs(z - q) < 1e-12 and q <= 0
    if m_star is not None:
        if not at_nonpos_int:
            raise PoleError(f"zeta_t pole at z = t - {m_star}", location=t - m_star)
        # pole of F cancelled by the zero of 1/Gamma: the limit survives
        beta = dict(rep.pole_coefficients)[m_star]
        return (-1.0) ** (-q) * math.factorial(-q) * beta
    return rep.mellin(z) * _inv_gamma(z)


def continuation_poles(s, t, M: int = DEFAULT_POLE_TERMS,
                       coeff_floor: float = 1e-14):
    """Surviving poles of z -> zeta_t(z,s) found by the splitting rep.

    Returns a list of (location, residue); candidate poles at nonpositive
    integers are dropped (cancelled by 1/Gamma) as are negligible beta_m.
    """
    t = complex(t)
    betas = theta_pole_coeffs(s, t, M)
    out = []
    for m in range(M + 1):
        loc = t - m
        if abs(betas[m]) < coeff_floor:
            continue
        q = round(loc.real)
        if abs(loc - q) < _INT_TOL and q <= 0:
            continue
        out.append((loc, complex(betas[m]) * _inv_gamma(loc)))
    return out


def zeta_t(z, s, t, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """zeta_t(z,s) through whichever route fits the arguments.

    Integer t takes the exact Hurwitz/finite reduction (any s off the
    nonpositive integers); otherwise the direct series when it converges
    comfortably, else the splitting continuation (which needs Re s > 0).
    """
    z, s, t = complex(z), complex(s), complex(t)
    n = _as_int(t)
    if n is not None:
        return zeta_t_int(z, s, n, ctrl)
    if z.real > t.real + 0.5:
        return zeta_t_series(z, s, t)
    return zeta_t_cont(z, s, t, ctrl)


# ---------------------------------------------------------------------------
# two-variable gamma and multiple sine


def _log_gamma2_splitting(s, t, M: int = DEFAULT_POLE_TERMS) -> complex:
    """log Gamma(s,t) from the splitting rep: with F(z) the Mellin side and
    1/Gamma(z) = z + gamma z^2 + ..., the z-coefficient of F(z)/Gamma(z)."""
    s, t = complex(s), complex(t)
    rep = continuation_rep(s, t, M=M)
    n0 = _as_int(t)
    if n0 is not None and 0 <= n0 <= M:
        beta = dict(rep.pole_coefficients)[n0]
        return EULER_GAMMA * beta + rep.mellin_regular(0.0, n0)
    return rep.mellin(0.0)


def log_gamma2(s, t, ctrl: SeriesControl = DEFAULT_CONTROL,
               M: int = DEFAULT_POLE_TERMS) -> complex:
    """log Gamma(s,t) = d/dz zeta_t(z,s) at z=0.

    Integer t goes through the Hurwitz reduction (valid for any s off the
    nonpositive integers); non-integer t through the splitting rep, which
    needs Re s > 0.
    """
    s, t = complex(s), complex(t)
    n = _as_int(t)
    if n is not None:
        if n == 0:
            if abs(s) < _POLE_GUARD:
                raise PoleError("Gamma(s,0) = 1/s poles at s=0", location=0.0)
            return -cmath.log(s)
        try:
            return zeta_t_int_zderiv(0.0, s, n, ctrl)
        except DomainError as exc:
            raise PoleError(f"Gamma(s,{n}) singular at s={s}: {exc}") from exc
    return _log_gamma2_splitting(s, t, M=M)


_POLE_GUARD = 1e-12


def gamma2(s, t, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Gamma(s,t) = exp(d/dz zeta_t(z,s)|_{z=0})."""
    return cmath.exp(log_gamma2(s, t, ctrl))


def multisine(s, n: int, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Multiple sine S(s,n) = Gamma(s,n)^(-1) Gamma(n-s,n)^((-1)^n),
    assembled in log space."""
    s = complex(s)
    n = int(n)
    if n < 0:
        raise DomainError("multisine defined for integer n >= 0")
    log_s = -log_gamma2(s, n, ctrl) + (-1.0) ** n * log_gamma2(n - s, n, ctrl)
    return cmath.exp(log_s)


def log_multisine(s, n: int, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """log S(s,n) with the phase as accumulated from the two gamma logs."""
    s = complex(s)
    n = int(n)
    if n < 0:
        raise DomainError("multisine defined for integer n >= 0")
    return -log_gamma2(s, n, ctrl) + (-1.0) ** n * log_gamma2(n - s, n, ctrl)
