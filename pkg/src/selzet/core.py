"""Foundation special functions.

Complex log-gamma and Beta, the classical Hurwitz zeta with its analytic
continuation by Euler-Maclaurin summation (value and z-derivative computed
analytically inside the same representation), generalized binomial
coefficients, and adaptive quadrature over the real line.

All functions are pure; poles are signaled with PoleError/DomainError,
never silent infinities.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import ConvergenceError, DomainError, PoleError

EULER_GAMMA = 0.5772156649015328606

_POLE_TOL = 1e-12


@dataclass(frozen=True)
class SeriesControl:
    """Knobs for series summation and Euler-Maclaurin continuation."""

    max_terms: int = 50
    tail_tolerance: float = 1e-12
    euler_maclaurin_order: int = 8

    def __post_init__(self):
        if self.max_terms < 1:
            raise DomainError("max_terms must be positive")
        if self.tail_tolerance <= 0:
            raise DomainError("tail_tolerance must be > 0")
        if not 1 <= self.euler_maclaurin_order <= 12:
            raise DomainError("euler_maclaurin_order must be in 1..12")


DEFAULT_CONTROL = SeriesControl()

# B_2, B_4, ..., B_24 (scipy orders them B_0, B_1, ...)
_BERNOULLI = special.bernoulli(24)[2::2]


def _is_nonpositive_integer(z: complex, tol: float = _POLE_TOL) -> bool:
    z = complex(z)
    if z.real > 0.5 or abs(z.imag) > tol:
        return False
    return abs(z.real - round(z.real)) <= tol


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z)."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"log_gamma pole at z={z}", location=z)
    return complex(special.loggamma(z))


def beta(a, b) -> complex:
    """Beta function B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b)."""
    a, b = complex(a), complex(b)
    if _is_nonpositive_integer(a + b):
        raise PoleError(f"beta: a+b={a + b} is a nonpositive integer")
    return cmath.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def _em_hurwitz(z: complex, a: complex, ctrl: SeriesControl):
    """Euler-Maclaurin value and z-derivative of zeta(z, a), Re(a) > 0.5.

    zeta(z,a) = sum_{k<K} (a+k)^-z + (a+K)^(1-z)/(z-1) + (a+K)^-z/2
                + sum_j B_2j/(2j)! * (z)_{2j-1} * (a+K)^(-z-2j+1)
    differentiated term by term in z.
    """
    K = ctrl.max_terms
    order = ctrl.euler_maclaurin_order
    val = 0j
    dval = 0j
    for k in range(K):
        lg = cmath.log(a + k)
        term = cmath.exp(-z * lg)
        val += term
        dval += -lg * term

    aK = a + K
    laK = cmath.log(aK)

    tail = cmath.exp((1 - z) * laK) / (z - 1)
    val += tail
    dval += -laK * tail - tail / (z - 1)

    half = cmath.exp(-z * laK) / 2
    val += half
    dval += -laK * half

    # rising factorial (z)_{2j-1} = z(z+1)...(z+2j-2) and its derivative,
    # built incrementally so zeros of the product stay harmless
    poch = z
    dpoch = 1.0 + 0j
    base = cmath.exp(-z * laK) / aK  # (a+K)^(-z-1)
    for j in range(1, order + 1):
        if j > 1:
            for i in (2 * j - 3, 2 * j - 2):
                dpoch = dpoch * (z + i) + poch
                poch = poch * (z + i)
        coeff = _BERNOULLI[j - 1] / special.factorial(2 * j, exact=True)
        term = coeff * poch * base
        val += term
        dval += coeff * (dpoch - poch * laK) * base
        base /= aK * aK  # -> (a+K)^(-z-2j-1)
    return val, dval


def _hurwitz_pair(z: complex, a: complex, ctrl: SeriesControl):
    """(zeta(z,a), d/dz zeta(z,a)) for any a off the nonpositive integers.

    Arguments with Re(a) <= 0.5 are shifted with the defining recurrence
    zeta(z,a) = zeta(z,a+1) + a^-z before Euler-Maclaurin kicks in.
    """
    z, a = complex(z), complex(a)
    if _is_nonpositive_integer(a):
        raise DomainError(f"hurwitz_zeta: a={a} is a nonpositive integer")
    if abs(z - 1) < 1e-10:
        raise PoleError("hurwitz_zeta has a simple pole at z=1", location=1.0)
    val = 0j
    dval = 0j
    while a.real <= 0.5:
        lg = cmath.log(a)
        term = cmath.exp(-z * lg)
        val += term
        dval += -lg * term
        a = a + 1
    if z.real < 0:
        # direct-sum terms grow like (a+k)^|Re z|; a short sum keeps the
        # cancellation against the tail terms within double precision
        K = min(ctrl.max_terms, max(1, int(np.ceil(12.0 - a.real))))
        ctrl = SeriesControl(max_terms=K, tail_tolerance=ctrl.tail_tolerance,
                             euler_maclaurin_order=min(8, ctrl.euler_maclaurin_order))
    v, dv = _em_hurwitz(z, a, ctrl)
    return val + v, dval + dv


def hurwitz_zeta(z, a, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Hurwitz zeta zeta(z,a), analytically continued in z (pole at z=1)."""
    return _hurwitz_pair(z, a, ctrl)[0]


def hurwitz_zeta_zderiv(z0, a, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """d/dz zeta(z,a) at z=z0, differentiated inside the Euler-Maclaurin
    representation (no finite differences)."""
    return _hurwitz_pair(z0, a, ctrl)[1]


def gen_binom(t, k: int) -> complex:
    """Generalized binomial C(t+k-1, k) = prod_{i=1..k} (t+i-1)/i.

    Exactly zero when t is a nonpositive integer and k >= 1-t.
    """
    if k < 0:
        raise DomainError("gen_binom: k must be a nonnegative integer")
    t = complex(t)
    v = 1.0 + 0j
    for i in range(1, k + 1):
        v *= (t + i - 1) / i
    return v


def quad_realline(integrand, decay_exponent: float, tol: float = 1e-10) -> complex:
    """Adaptive quadrature of integrand over the whole real line.

    The integrand must decay at least like |r|^decay_exponent with
    decay_exponent < -2 (or faster).  Evaluated as the half-line integral
    of f(r) + f(-r), so odd parts cancel exactly.
    """
    if decay_exponent > -2:
        raise DomainError(
            f"quad_realline needs decay_exponent < -2, got {decay_exponent}"
        )

    def folded(r, pick):
        w = complex(integrand(r)) + complex(integrand(-r))
        return w.real if pick == 0 else w.imag

    total = 0j
    err = 0.0
    for pick in (0, 1):
        v, e = integrate.quad(folded, 0, np.inf, args=(pick,),
                              epsabs=tol / 4, epsrel=0.0, limit=400)
        total += v if pick == 0 else 1j * v
        err += e
    if err > max(tol, 1e-13 * (1 + abs(total))):
        raise ConvergenceError(
            f"quad_realline error estimate {err:.3e} exceeds tol {tol:.3e}",
            estimate=total, error_bound=err)
    return total
