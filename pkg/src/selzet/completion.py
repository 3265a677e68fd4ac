"""Completion polynomial and functional-equation machinery.

The determinant expression writes the two-variable product as

    Z(s,t) = exp(P(s,t)) (Gamma(s+1,t+1)Gamma(s,t+1))^(-2(g-1))
             (detG(s-1/2+ir, t-1) detG(s-1/2-ir, t-1))^(-1)

with a polynomial correction P pinned down by the difference equation
P(s,t+1) - P(s+1,t+1) = P(s,t).  This module fits P from the residual of
that expression, verifies the difference equation, evaluates the
completed functions H and the complete zeta Z-hat, and checks the exact
per-term reflection identities behind the functional equation: the
test-function identity for all integer n (with psi-regularized finite
parts and tangent corrections for n >= 2), and its m-th s-derivative.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special

from .binom_zeta import log_gamma2, log_multisine
from .core import DEFAULT_CONTROL, SeriesControl, beta
from .errors import DomainError
from .products import DEFAULT_POLICY, TruncationPolicy, log_Z2
from .spectral import (fhat, fhat_m, log_det_gamma_spec, log_det_sine_spec,
                       spectral_params, spectral_sum)
from .spectrum import EigenSpectrum, LengthSpectrum

_COEFF_FLOOR = 1e-9


@dataclass(frozen=True)
class CompletionPolynomial:
    """P(s) at a fixed t label; coefficients are p_0..p_d ascending.

    For real paired data the coefficients are real; fits from synthetic
    inputs may carry imaginary parts, which are kept and reported.
    """

    t_label: complex
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           tuple(complex(c) for c in self.coefficients))

    @property
    def degree(self) -> int:
        d = -1
        for i, c in enumerate(self.coefficients):
            if abs(c) > _COEFF_FLOOR:
                d = i
        return d

    def __call__(self, s) -> complex:
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * complex(s) + c
        return acc


def zero_polynomial(t) -> CompletionPolynomial:
    return CompletionPolynomial(t_label=complex(t), coefficients=(0j,))


def p_poly_from_shift(P_next: CompletionPolynomial) -> CompletionPolynomial:
    """P at t from P at t+1 through the exact difference P(s) - P(s+1)."""
    c = P_next.coefficients
    d = len(c) - 1
    out = [0j] * (len(c))
    for k, ck in enumerate(c):
        # (s+1)^k expanded: subtract all but the leading term, which cancels
        for j in range(k):
            out[j] -= ck * math.comb(k, j)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return CompletionPolynomial(t_label=P_next.t_label - 1,
                                coefficients=tuple(out))


def p_recursion_readings(P_t: CompletionPolynomial):
    """Both readings of the displayed coefficient recursion for t -> t+1.

    The display 'p_{l+1}^{(t+1)} = sum_m (-1)^{l+m+1} C(m,l) p_l^{(t)}' has
    its summand independent of the summation index m except through the
    sign and binomial; it likely intends p_m^{(t)} on the right.  Returns
    {"literal": ..., "p_m_reading": ...}, each a tuple of predicted
    p_1..p_{d+1} at t+1 (p_0 is not determined by the recursion).
    """
    p = P_t.coefficients
    top = len(p) - 1
    literal = []
    p_m_reading = []
    for l in range(top + 1):
        lit = sum((-1) ** (l + m + 1) * math.comb(m, l) * p[l]
                  for m in range(l, top + 1))
        rdm = sum((-1) ** (l + m + 1) * math.comb(m, l) * p[m]
                  for m in range(l, top + 1))
        literal.append(lit)
        p_m_reading.append(rdm)
    return {"literal": tuple(literal), "p_m_reading": tuple(p_m_reading)}


def det_expression_residual(s, t, spec: LengthSpectrum, eig: EigenSpectrum,
                            g: int, pol: TruncationPolicy = DEFAULT_POLICY,
                            ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """log Z(s,t) minus the determinant expression's non-polynomial part.

    Equals P(s,t) when the length spectrum and eigenvalue list describe the
    same surface; the fitting path samples this on an s-grid.
    """
    s, t = complex(s), complex(t)
    return (log_Z2(s, t, spec, pol).log_value
            + 2.0 * (g - 1) * (log_gamma2(s + 1, t + 1, ctrl)
                               + log_gamma2(s, t + 1, ctrl))
            + log_det_gamma_spec(s, t - 1, eig, +1, ctrl)
            + log_det_gamma_spec(s, t - 1, eig, -1, ctrl))


def fit_completion_polynomial(t, spec: LengthSpectrum, eig: EigenSpectrum,
                              g: int, pol: TruncationPolicy = DEFAULT_POLICY,
                              s_grid=None,
                              ctrl: SeriesControl = DEFAULT_CONTROL) -> CompletionPolynomial:
    """Least-squares polynomial fit of the determinant-expression residual.

    The fitting degree is the larger textual bound max(2, floor(Re t) + 1);
    the realized degree is whatever survives the coefficient floor.  The
    polynomial is identically zero for Re t < -1.
    """
    t = complex(t)
    if t.real < -1.0:
        return zero_polynomial(t)
    degree = max(2, math.floor(t.real) + 1)
    if s_grid is None:
        s_grid = np.linspace(1.2, 3.2, max(2 * degree + 5, 9))
    vals = np.array([det_expression_residual(s, t, spec, eig, g, pol, ctrl)
                     for s in s_grid])
    coeffs = np.polynomial.polynomial.polyfit(
        np.asarray(s_grid, dtype=complex), vals, degree)
    return CompletionPolynomial(t_label=t, coefficients=tuple(coeffs))


def p0_from_limit(t, spec: LengthSpectrum, eig: EigenSpectrum, g: int,
                  pol: TruncationPolicy = DEFAULT_POLICY,
                  P: CompletionPolynomial | None = None,
                  eps_grid=(1e-2, 5e-3, 2.5e-3),
                  ctrl: SeriesControl = DEFAULT_CONTROL):
    """The s -> 0 limit formula for the constant coefficient p_0:

        p_0 = lim [log Z(s,t) + d/dz {2(g-1) zeta_t(z,s) + xi+ + xi-}|_0],

    with log Z at small s taken from the rearranged determinant expression
    (the product form diverges there); P defaults to the fitted polynomial.
    Richardson extrapolation over eps_grid; returns (estimate, spread).
    """
    t = complex(t)
    if P is None:
        P = fit_completion_polynomial(t, spec, eig, g, pol, ctrl=ctrl)

    def f(eps):
        log_z = (P(eps)
                 - 2.0 * (g - 1) * (log_gamma2(eps + 1, t + 1, ctrl)
                                    + log_gamma2(eps, t + 1, ctrl))
                 - log_det_gamma_spec(eps, t - 1, eig, +1, ctrl)
                 - log_det_gamma_spec(eps, t - 1, eig, -1, ctrl))
        return (log_z + 2.0 * (g - 1) * log_gamma2(eps, t, ctrl)
                + log_det_gamma_spec(eps, t, eig, +1, ctrl)
                + log_det_gamma_spec(eps, t, eig, -1, ctrl))

    f1, f2, f3 = (f(e) for e in eps_grid)
    r12 = 2.0 * f2 - f1
    r23 = 2.0 * f3 - f2
    spread = abs(r23 - r12)
    if spread > 1e-3 * (1 + abs(r23)):
        warnings.warn(f"p0 extrapolation unstable: spread {spread:.3e}",
                      stacklevel=2)
    return r23, spread


# ---------------------------------------------------------------------------
# completed functions


def log_H(s, t, spec: LengthSpectrum, g: int,
          pol: TruncationPolicy = DEFAULT_POLICY,
          ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """log of the completed product H(s,t) = Z(s,t) (G(s+1,t+1)G(s,t+1))^{2(g-1)}."""
    s, t = complex(s), complex(t)
    return (log_Z2(s, t, spec, pol).log_value
            + 2.0 * (g - 1) * (log_gamma2(s + 1, t + 1, ctrl)
                               + log_gamma2(s, t + 1, ctrl)))


def log_H_spectral_deriv(s, t, m: int, eig: EigenSpectrum,
                         ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """(-1)^m/m! d^{m+1}/ds^{m+1} log H through the eigenvalue sum
    (1/m!) sum_j m_j fhat_m(s,t,r_j,m); exact for finite lists."""
    return spectral_sum(s, t, m, eig, ctrl)


def log_Z_hat(s, n: int, spec: LengthSpectrum, eig: EigenSpectrum, g: int,
              pol: TruncationPolicy = DEFAULT_POLICY,
              P: CompletionPolynomial | None = None,
              ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """log of the complete zeta: Z(s,n) S(s,n+1)^{-2(g-1)} exp P(s,n),
    times detS(s-1/2-ir, n-1)^{-1} for n >= 2."""
    s = complex(s)
    n = int(n)
    if P is None:
        P = zero_polynomial(n)
    acc = (log_Z2(s, float(n), spec, pol).log_value
           - 2.0 * (g - 1) * log_multisine(s, n + 1, ctrl)
           + P(s))
    if n >= 2:
        acc -= log_det_sine_spec(s, n - 1, eig, -1, ctrl)
    return acc


def zhat_reflection_residual(s, n: int, spec: LengthSpectrum,
                             eig: EigenSpectrum, g: int,
                             pol: TruncationPolicy = DEFAULT_POLICY,
                             P: CompletionPolynomial | None = None,
                             ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """|log Zhat(n-s,n) - (-1)^{n-1} log Zhat(s,n)|: the global reflection.

    Exact only for genuinely paired surface data; with synthetic inputs
    this is a report, not an assertion.
    """
    lhs = log_Z_hat(complex(n) - s, n, spec, eig, g, pol, P, ctrl)
    rhs = log_Z_hat(s, n, spec, eig, g, pol, P, ctrl)
    return abs(lhs - (-1.0) ** (n - 1) * rhs)


# ---------------------------------------------------------------------------
# reflection identities of the test function


def _R_poly_coeffs(n: int) -> np.ndarray:
    """Coefficients (ascending) of R(w) = prod_{k=1}^{n-2} (w - k)."""
    coeffs = np.array([1.0 + 0j])
    for k in range(1, n - 1):
        coeffs = np.convolve(coeffs, np.array([-float(k), 1.0 + 0j]))
    return coeffs


def _poly_eval(coeffs, w: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * w + c
    return acc


def _poly_deriv(coeffs):
    return np.array([k * coeffs[k] for k in range(1, len(coeffs))]) \
        if len(coeffs) > 1 else np.array([0j])


def _tan_derivs(x: complex, m: int):
    """[tan(x), tan'(x), ..., tan^(m)(x)] by the derivative-polynomial
    recurrence: with u = tan x, d/dx maps Q(u) to Q'(u)(1+u^2)."""
    u = cmath.tan(x)
    poly = np.array([0j, 1.0 + 0j])  # Q_0(u) = u
    out = []
    for _ in range(m + 1):
        out.append(_poly_eval(poly, u))
        dq = _poly_deriv(poly)
        poly = np.convolve(dq, np.array([1.0 + 0j, 0j, 1.0 + 0j]))
    return out


def _tan_correction(n: int, s: complex, y: complex) -> complex:
    """K(s,y) = pi/(n-2)! [tan pi(s+iy) R(u) + tan pi(s-iy) R(v)],
    u = s+iy-1/2, v = s-iy-1/2, R(w) = prod_{k=1}^{n-2}(w-k); n >= 2."""
    R = _R_poly_coeffs(n)
    u = s + 1j * y - 0.5
    v = s - 1j * y - 0.5
    return math.pi / math.factorial(n - 2) * (
        cmath.tan(math.pi * (s + 1j * y)) * _poly_eval(R, u)
        + cmath.tan(math.pi * (s - 1j * y)) * _poly_eval(R, v))


def _tan_correction_deriv(n: int, s: complex, y: complex, m: int) -> complex:
    """d^m/ds^m of the tangent correction K(s,y), by Leibniz over the
    tangent derivative polynomials and the polynomial factor R."""
    R_derivs = [_R_poly_coeffs(n)]
    for _ in range(m):
        R_derivs.append(_poly_deriv(R_derivs[-1]))
    acc = 0j
    for branch in (+1, -1):
        arg = math.pi * (s + branch * 1j * y)
        tans = _tan_derivs(arg, m)
        w = s + branch * 1j * y - 0.5
        for j in range(m + 1):
            acc += (math.comb(m, j) * math.pi ** j * tans[j]
                    * _poly_eval(R_derivs[m - j], w))
    return math.pi / math.factorial(n - 2) * acc


def lemfe_residual(n: int, s, y) -> float:
    """Residual of the test-function reflection identity at integer n.

    n <= 1: |fhat(n-s,n,y) - (-1)^n fhat(s,n,y)| directly from the Beta
    form.  n >= 2: the Beta form degenerates (Gamma(2-n) poles), so both
    sides are evaluated as psi-regularized finite parts: the reflected
    side as the limit along the moving argument, the direct side as the
    fixed-argument finite part, with the tangent correction closing the
    identity:  A - (-1)^n B = K.
    """
    n = int(n)
    s, y = complex(s), complex(y)
    if n <= 1:
        return abs(fhat(n - s, n, y) - (-1.0) ** n * fhat(s, n, y))
    R = _R_poly_coeffs(n)
    u = s + 1j * y - 0.5
    v = s - 1j * y - 0.5
    up = (n - s) + 1j * y - 0.5
    vp = (n - s) - 1j * y - 0.5
    c = (-1.0) ** n / math.factorial(n - 2)
    psi = special.digamma
    psi_n1 = complex(psi(n - 1.0))
    Ru, Rv = _poly_eval(R, u), _poly_eval(R, v)
    Rup, Rvp = _poly_eval(R, up), _poly_eval(R, vp)
    A = c * (psi_n1 * (Rup + Rvp) - Rup * complex(psi(up)) - Rvp * complex(psi(vp)))
    B = c * (psi_n1 * (Ru + Rv) - Ru * complex(psi(u + 2 - n))
             - Rv * complex(psi(v + 2 - n)))
    K = _tan_correction(n, s, y)
    return abs(A - (-1.0) ** n * B - K)


def fe_deriv_residual(n: int, s, m: int, eig: EigenSpectrum,
                      ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Residual of the m-th derivative reflection identity over a finite
    eigenvalue list, which holds term by term:

        fhat_m(n-s,n,r_j,m) = (-1)^{n+m} fhat_m(s,n,r_j,m)   (n <= 1)

    with the additional d^m/ds^m tangent-correction term for n >= 2.
    Needs m >= 1 and m > n - 2 for series convergence.
    """
    n = int(n)
    s = complex(s)
    if m < 1:
        raise DomainError("fe_deriv_residual needs m >= 1")
    if m <= n - 2:
        raise DomainError(
            f"fhat_m series diverges for m = {m} <= n - 2 = {n - 2}")
    acc = 0j
    for p in spectral_params(eig):
        lhs = fhat_m(complex(n) - s, n, p.r, m, ctrl=ctrl)
        rhs = (-1.0) ** (n + m) * fhat_m(s, n, p.r, m, ctrl=ctrl)
        corr = _tan_correction_deriv(n, s, p.r, m) if n >= 2 else 0j
        acc += p.multiplicity * (lhs - rhs - corr)
    return abs(acc) / math.factorial(m)
