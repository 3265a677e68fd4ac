"""Property-test battery behind the `suite` subcommand.

Each check exercises one of the invariants declared by the library modules
and reports a stable identifier, the worst observed residual, and the
tolerance it is held to.  The CLI renders the results as a table and exits
nonzero when any check fails.
"""

from __future__ import annotations

import cmath
import math
import os
import random
import warnings
from dataclasses import dataclass

import numpy as np

from . import binom_zeta, completion, core, products, spectral, spectrum
from .errors import PoleError


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def _rng(seed=20240817):
    return random.Random(seed)


# ---------------------------------------------------------------------------
# foundation checks


def check_log_gamma_recurrence() -> CheckResult:
    rng = _rng(1)
    worst = 0.0
    count = 0
    while count < 100:
        z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
        if abs(z) > 20 or (abs(z.imag) < 0.1 and z.real < 0.6
                           and abs(z.real - round(z.real)) < 0.1):
            continue
        count += 1
        lhs = cmath.exp(core.log_gamma(z + 1))
        rhs = z * cmath.exp(core.log_gamma(z))
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return CheckResult("core.log-gamma-recurrence", worst, 1e-12)


def check_beta_symmetry() -> CheckResult:
    worst = 0.0
    for a, b in [(1.3, 0.7), (2.0 + 0.5j, 0.4), (0.9, 3.1 - 0.2j)]:
        worst = max(worst, abs(core.beta(a, b) - core.beta(b, a)))
    return CheckResult("core.beta-symmetry", worst, 1e-15)


def check_hurwitz_recurrence() -> CheckResult:
    worst = 0.0
    for z in (2.0, -0.5, 3.2 + 1.1j, 0.25):
        for a in (0.7, 1.4, 2.9):
            d = (core.hurwitz_zeta(z, a) - core.hurwitz_zeta(z, a + 1)
                 - complex(a) ** (-complex(z)))
            worst = max(worst, abs(d))
    return CheckResult("core.hurwitz-recurrence", worst, 1e-10)


def check_gen_binom_pascal() -> CheckResult:
    worst = 0.0
    for t in (0.7, -1.3, 2.0 + 0.4j):
        for k in range(1, 8):
            d = (core.gen_binom(complex(t) + 1, k)
                 - core.gen_binom(complex(t) + 1, k - 1) - core.gen_binom(t, k))
            scale = max(1.0, abs(core.gen_binom(t, k)))
            worst = max(worst, abs(d) / scale)
    return CheckResult("core.gen-binom-pascal", worst, 1e-13)


# ---------------------------------------------------------------------------
# binomial zeta / gamma checks


def check_zeta_t_ladder() -> CheckResult:
    worst = 0.0
    for z in (-1.5, 0.25, 2.5):
        for s in (0.8, 1.5, 2.4):
            for t in (0.4, 1.3, 2.6):
                d = (binom_zeta.zeta_t_cont(z, s, t + 1)
                     - binom_zeta.zeta_t_cont(z, s + 1, t + 1)
                     - binom_zeta.zeta_t_cont(z, s, t))
                worst = max(worst, abs(d))
    return CheckResult("bzg.zeta-t-ladder", worst, 1e-8)


def check_integer_path() -> CheckResult:
    worst = 0.0
    for n in range(4):
        for z in (-2.5, -0.5, 0.25, 3.0):
            for s in (0.6, 1.0, 2.4):
                try:
                    a = binom_zeta.zeta_t_cont(z, s, float(n))
                    b = binom_zeta.zeta_t_int(z, s, n)
                except PoleError:
                    continue  # a genuine pole of zeta_n at this z
                worst = max(worst, abs(a - b))
    return CheckResult("bzg.integer-path", worst, 1e-8)


def check_gamma2_shift() -> CheckResult:
    worst = 0.0
    for s in (0.6, 1.0, 1.3, 2.1, 2.8):
        for t in (0.3, 0.7, 1.0, 1.6, 2.2):
            d = (binom_zeta.log_gamma2(s, t + 1) - binom_zeta.log_gamma2(s + 1, t + 1)
                 - binom_zeta.log_gamma2(s, t))
            worst = max(worst, abs(d))
    return CheckResult("bzg.gamma2-shift", worst, 1e-8)


def check_multisine_reflection() -> CheckResult:
    rng = _rng(2)
    worst = 0.0
    for _ in range(10):
        s = complex(rng.uniform(0.05, 0.95), rng.uniform(-0.3, 0.3))
        v = binom_zeta.multisine(s, 1)
        worst = max(worst, abs(v / (2 * cmath.sin(math.pi * s)) - 1))
    return CheckResult("bzg.multisine-reflection", worst, 1e-9)


# ---------------------------------------------------------------------------
# spectrum checks


def _pingpong_group():
    A = np.array([[3.0, 0.0], [0.0, 1.0 / 3.0]])
    B = np.array([[5.0 / 3.0, 4.0 / 3.0], [4.0 / 3.0, 5.0 / 3.0]])
    return spectrum.GroupPresentation(generators=(A, B), genus=2)


def check_spectrum_powers() -> CheckResult:
    M = np.array([[2.0, 1.0], [1.0, 1.0]])
    G = spectrum.GroupPresentation(generators=(M,), genus=2)
    N = spectrum.class_norm(M)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        spec = spectrum.enumerate_classes(G, 4, N ** 4 * 1.01)
    worst = 0.0
    for k, e in enumerate(spec.entries, start=1):
        worst = max(worst, abs(e.norm - N ** k) / N ** k)
        if e.power != k or e.multiplicity != 2:
            worst = max(worst, 1.0)
    return CheckResult("spectrum.powers", worst, 1e-10)


def check_spectrum_conjugation() -> CheckResult:
    G = _pingpong_group()
    C = np.array([[1.05, 0.1], [0.1, 1.0]])
    C = C / math.sqrt(np.linalg.det(C))
    Ci = np.linalg.inv(C)
    Gc = spectrum.GroupPresentation(
        generators=tuple(C @ g @ Ci for g in G.generators), genus=2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        s1 = spectrum.enumerate_classes(G, 6, 1e8)
        s2 = spectrum.enumerate_classes(Gc, 6, 1e8)
    e1 = [n for e in s1.entries for n in [e.norm] * e.multiplicity]
    e2 = [n for e in s2.entries for n in [e.norm] * e.multiplicity]
    if len(e1) != len(e2):
        return CheckResult("spectrum.conjugation", 1.0, 1e-9)
    worst = max(abs(a - b) / b for a, b in zip(e1, e2))
    return CheckResult("spectrum.conjugation", worst, 1e-9)


def check_spectrum_determinism() -> CheckResult:
    G = _pingpong_group()
    saved = os.environ.get("SELZET_THREADS")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            os.environ["SELZET_THREADS"] = "1"
            s1 = spectrum.enumerate_classes(G, 7, 1e9)
            os.environ["SELZET_THREADS"] = "3"
            s2 = spectrum.enumerate_classes(G, 7, 1e9)
    finally:
        if saved is None:
            os.environ.pop("SELZET_THREADS", None)
        else:
            os.environ["SELZET_THREADS"] = saved
    return CheckResult("spectrum.determinism", 0.0 if s1 == s2 else 1.0, 0.0)


# ---------------------------------------------------------------------------
# product checks


def _synthetic_spectra():
    mk = spectrum.make_entry
    return [
        spectrum.LengthSpectrum(entries=(mk(4.0),), genus=2, norm_cutoff=5.0),
        spectrum.LengthSpectrum(entries=(mk(4.0), mk(9.0)), genus=2,
                                norm_cutoff=10.0),
        spectrum.LengthSpectrum(entries=(mk(6.854101966249685, 2),), genus=3,
                                norm_cutoff=7.0),
    ]


def check_product_interpolation() -> CheckResult:
    pol = products.TruncationPolicy(tail_tolerance=1e-14)
    worst = 0.0
    for spec in _synthetic_spectra():
        for s in (1.5, 2.0, 3.0):
            a = products.log_Z2(s, 0.0, spec, pol).log_value
            b = products.log_ruelle(s, spec, pol).log_value
            worst = max(worst, abs(a + b) / max(1.0, abs(b)))
            c = products.log_Z2(s, 1.0, spec, pol).log_value
            d = products.log_Z_classic(s, spec, pol).log_value
            worst = max(worst, abs(c - d) / max(1.0, abs(d)))
            e = products.log_Z_rank(s, 2, spec,
                                    products.TruncationPolicy(n_cutoff=60),
                                    method="direct").log_value
            f = products.log_Z2(s, 2.0, spec,
                                products.TruncationPolicy(n_cutoff=60)).log_value
            worst = max(worst, abs(e - f) / max(1.0, abs(f)))
    return CheckResult("products.interpolation", worst, 1e-10)


def check_product_negative_t() -> CheckResult:
    pol = products.TruncationPolicy(tail_tolerance=1e-14)
    worst = 0.0
    for spec in _synthetic_spectra():
        for m in (1, 2, 3):
            lhs = products.log_Z2(2.0, float(-m), spec, pol).log_value
            rhs = sum((-1) ** (n - 1) * math.comb(m, n)
                      * products.log_ruelle(2.0 + n, spec, pol).log_value
                      for n in range(m + 1))
            worst = max(worst, abs(lhs - rhs))
    return CheckResult("products.negative-t", worst, 1e-12)


def check_product_ladder() -> CheckResult:
    pol = products.TruncationPolicy(n_cutoff=60)
    worst = 0.0
    for spec in _synthetic_spectra():
        for (s, t) in ((2.0, 1.0), (3.0, 0.5), (2.5, -0.7)):
            worst = max(worst, products.ladder_residual(s, t, spec, pol))
    return CheckResult("products.ladder", worst, 1e-12)


def check_product_second_ladder() -> CheckResult:
    pol = products.TruncationPolicy(n_cutoff=80)
    spec = _synthetic_spectra()[0]
    worst = 0.0
    for (s, t) in ((2.0, 0.5), (2.5, 1.0)):
        lhs = products.log_Z2(s, t + 1, spec, pol).log_value
        rhs = sum(products.log_Z2(s + n, t, spec, pol).log_value
                  for n in range(81))
        worst = max(worst, abs(lhs - rhs))
    return CheckResult("products.second-ladder", worst, 1e-10)


def check_product_linearity() -> CheckResult:
    mk = spectrum.make_entry
    one = spectrum.LengthSpectrum(entries=(mk(4.0, 1), mk(9.0, 1)), genus=2,
                                  norm_cutoff=10.0)
    two = spectrum.LengthSpectrum(entries=(mk(4.0, 2), mk(9.0, 2)), genus=2,
                                  norm_cutoff=10.0)
    pol = products.TruncationPolicy(n_cutoff=50)
    worst = 0.0
    for (s, t) in ((2.0, 0.7), (3.0, 1.5)):
        a = products.log_Z2(s, t, two, pol).log_value
        b = products.log_Z2(s, t, one, pol).log_value
        worst = max(worst, abs(a - 2 * b))
    return CheckResult("products.linearity", worst, 0.0)


# ---------------------------------------------------------------------------
# spectral checks


def _eig_small():
    E = spectrum.EigenEntry
    return spectrum.EigenSpectrum(entries=(E(0.25, 1), E(2.0, 2)), genus=2)


def check_xi_t1() -> CheckResult:
    eig = _eig_small()
    worst = 0.0
    for z in (3.0, 4.5):
        for s in (1.5, 2.3):
            for sign in (1, -1):
                a = spectral.xi_pm(z, s, 1.0, eig, sign)
                b = sum(e.multiplicity * core.hurwitz_zeta(
                    z, s - 0.5 + sign * 1j * spectral.r_from_lambda(e.lam).r)
                    for e in eig.entries)
                worst = max(worst, abs(a - b))
    return CheckResult("spectral.xi-t1", worst, 1e-10)


def check_fhat_even() -> CheckResult:
    worst = 0.0
    for (s, t, y) in ((1.2, 0.3, 0.7 + 0.1j), (2.0, 1.0, 0.4), (1.7, -0.6, 1.1)):
        worst = max(worst, abs(spectral.fhat(s, t, y) - spectral.fhat(s, t, -y)))
    return CheckResult("spectral.fhat-even", worst, 1e-13)


def check_fhat_m_derivative() -> CheckResult:
    rng = _rng(3)
    worst = 0.0
    for _ in range(10):
        s = rng.uniform(1.5, 2.5)
        t = rng.uniform(0.2, 1.4)
        y = rng.uniform(0.1, 1.0)
        h = 1e-3
        fd = (spectral.fhat(s + h, t, y) - 2 * spectral.fhat(s, t, y)
              + spectral.fhat(s - h, t, y)) / h ** 2
        fd4 = (spectral.fhat(s + 2 * h, t, y) - 2 * spectral.fhat(s, t, y)
               + spectral.fhat(s - 2 * h, t, y)) / (4 * h ** 2)
        fd = (4 * fd - fd4) / 3
        worst = max(worst, abs(spectral.fhat_m(s, t, y, 2) - fd))
    return CheckResult("spectral.fhat-m-derivative", worst, 1e-6)


def check_shift3_matched() -> CheckResult:
    eig = _eig_small()
    worst = 0.0
    for (s, t) in ((1.4, 0.6), (2.0, 1.2)):
        res = spectral.shift3_residuals(s, t, eig)
        worst = max(worst, res[(1, 1)], res[(-1, -1)])
    return CheckResult("spectral.shift3-matched-signs", worst, 1e-8)


def check_laplacian_symmetry() -> CheckResult:
    E = spectrum.EigenEntry
    eig = spectrum.EigenSpectrum(entries=(E(0.0, 1), E(2.0, 1), E(5.5, 2)),
                                 genus=2, complete_from_zero=True)
    worst = 0.0
    for s in (2.7, 0.3 + 1.1j, 4.0):
        a = spectral.log_det_laplacian(s, eig)
        b = spectral.log_det_laplacian(1 - s, eig)
        worst = max(worst, abs(a - b))
    return CheckResult("spectral.laplacian-symmetry", worst, 0.0)


def check_identity_term() -> CheckResult:
    worst = 0.0
    for (s, t, m, g) in ((2.0, 0.0, 2, 2), (1.5, 0.5, 3, 2), (2.5, 1.0, 3, 3)):
        q = spectral.identity_term_quad(s, t, m, g)
        ser = spectral.identity_term_series(s, t, m, g)
        worst = max(worst, abs(q - ser) / abs(ser))
    return CheckResult("spectral.identity-term-quad", worst, 1e-5)


# ---------------------------------------------------------------------------
# completion checks


def check_lemfe() -> CheckResult:
    rng = _rng(4)
    worst = 0.0
    for n in range(-2, 6):
        for _ in range(20):
            s = complex(rng.uniform(0.3, 2.2), rng.uniform(-0.8, 0.8))
            y = complex(rng.uniform(0.15, 1.5), rng.uniform(-0.3, 0.3))
            worst = max(worst, completion.lemfe_residual(n, s, y))
    return CheckResult("completion.lemfe", worst, 1e-10)


def check_fe_deriv() -> CheckResult:
    rng = _rng(5)
    E = spectrum.EigenEntry
    worst = 0.0
    for n in (-1, 0, 1, 2, 3):
        entries = tuple(sorted(
            (E(rng.uniform(0.0, 6.0), rng.randint(1, 2)) for _ in range(4)),
            key=lambda e: e.lam))
        eig = spectrum.EigenSpectrum(entries=entries, genus=2)
        for m in (2, 3):
            if m <= n - 2:
                continue
            s = complex(rng.uniform(1.1, 1.9), rng.uniform(-0.4, 0.4))
            worst = max(worst, completion.fe_deriv_residual(n, s, m, eig))
    return CheckResult("completion.fe-deriv", worst, 1e-9)


def check_p_shift_algebra() -> CheckResult:
    P = completion.CompletionPolynomial(t_label=2.0, coefficients=(0, 0, 1))
    Q = completion.p_poly_from_shift(P)
    worst = max(abs(Q.coefficients[0] + 1), abs(Q.coefficients[1] + 2))
    if Q.degree != P.degree - 1:
        worst = max(worst, 1.0)
    Z = completion.p_poly_from_shift(completion.zero_polynomial(3.0))
    worst = max(worst, max(abs(c) for c in Z.coefficients))
    if completion.fit_completion_polynomial(
            -1.5, _synthetic_spectra()[0], _eig_small(), 2).degree != -1:
        worst = max(worst, 1.0)
    return CheckResult("completion.p-shift-algebra", worst, 0.0)


def check_zhat_reduction() -> CheckResult:
    spec = _synthetic_spectra()[0]
    empty = spectrum.EigenSpectrum(entries=(), genus=2)
    pol = products.TruncationPolicy(tail_tolerance=1e-14)
    worst = 0.0
    for s in (1.8, 2.6):
        a = completion.log_Z_hat(s, 1, spec, empty, 1, pol)
        b = products.log_Z2(s, 1.0, spec, pol).log_value
        worst = max(worst, abs(a - b))
    return CheckResult("completion.zhat-reduction", worst, 0.0)


ALL_CHECKS = [
    check_log_gamma_recurrence,
    check_beta_symmetry,
    check_hurwitz_recurrence,
    check_gen_binom_pascal,
    check_zeta_t_ladder,
    check_integer_path,
    check_gamma2_shift,
    check_multisine_reflection,
    check_spectrum_powers,
    check_spectrum_conjugation,
    check_spectrum_determinism,
    check_product_interpolation,
    check_product_negative_t,
    check_product_ladder,
    check_product_second_ladder,
    check_product_linearity,
    check_xi_t1,
    check_fhat_even,
    check_fhat_m_derivative,
    check_shift3_matched,
    check_laplacian_symmetry,
    check_identity_term,
    check_lemfe,
    check_fe_deriv,
    check_p_shift_algebra,
    check_zhat_reduction,
]


def run_suite():
    """Run every check; returns the list of CheckResult in declaration order."""
    return [fn() for fn in ALL_CHECKS]
