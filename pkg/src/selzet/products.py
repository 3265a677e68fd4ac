"""Truncated Euler products over geodesic length spectra.

The two-variable product Z(s,t) = prod_p prod_n (1 - N(p)^(-s-n))^C(t+n-1,n)
together with its classical specializations: the weight-tower product Z(s)
(t=1), the single-factor product zeta(s) (t=0 gives 1/zeta), and the
higher-rank products Z^(r).  Everything is accumulated in log space with
explicit geometric tail bounds; log-derivative sums run over the full
power-closed spectrum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

from .core import gen_binom
from .errors import ConvergenceError, DomainError
from .spectrum import LengthSpectrum, make_entry

_N_CUTOFF_CAP = 10_000


@dataclass(frozen=True)
class TruncationPolicy:
    """Cutoffs for prime norms, the n-tower, and the target tail size.

    n_cutoff=None asks each evaluation to pick the smallest depth whose
    geometric tail bound clears tail_tolerance (hard cap 10^4).
    """

    norm_cutoff: float = math.inf
    n_cutoff: int | None = None
    tail_tolerance: float = 1e-12

    def __post_init__(self):
        if self.norm_cutoff <= 1.0:
            raise DomainError("norm_cutoff must exceed 1")
        if self.n_cutoff is not None and self.n_cutoff < 0:
            raise DomainError("n_cutoff must be >= 0")
        if self.tail_tolerance <= 0:
            raise DomainError("tail_tolerance must be > 0")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class ZetaPoint:
    """One product evaluation: log value plus the truncation that produced it."""

    s: complex
    t: complex
    log_value: complex
    truncation: TruncationPolicy
    tail_bound: float

    def __post_init__(self):
        if not (self.tail_bound >= 0 and math.isfinite(self.tail_bound)):
            raise DomainError("tail_bound must be finite and >= 0")

    @property
    def value(self) -> complex:
        return cmath.exp(self.log_value)


def _primitives(spec: LengthSpectrum, pol: TruncationPolicy):
    return [e for e in spec.primitives() if e.norm <= pol.norm_cutoff]


def _require_convergent(s: complex):
    # the infinite product needs Re s > 1, but a truncated spectrum is a
    # finite product whose factors stay inside the unit disk for Re s > 0
    if complex(s).real <= 0.0:
        raise DomainError(f"product factors leave |w| < 1 for Re s = "
                          f"{complex(s).real} <= 0")


def _tail_bound(t: complex, K: int, sigma: float, n_min: float, weight: float) -> float:
    """Bound on the dropped n > K terms of the log sum.

    Uses |log(1-x)| <= 2|x| for |x| <= 1/2 and the binomial ratio bound
    |C(t+n,n+1)/C(t+n-1,n)| <= 1 + |t|/(n+1) for n > K.
    """
    if weight == 0.0:
        return 0.0
    q = (1.0 + abs(t) / (K + 2)) / n_min
    if q >= 1.0:
        return math.inf
    head = abs(gen_binom(t, K + 1)) * n_min ** (-sigma - K - 1)
    return 2.0 * weight * head / (1.0 - q)


def _resolve_n_cutoff(t: complex, pol: TruncationPolicy, sigma: float,
                      n_min: float, weight: float):
    """(n_cutoff, tail_bound) honoring an explicit cutoff or auto-selecting one."""
    if pol.n_cutoff is not None:
        return pol.n_cutoff, _tail_bound(t, pol.n_cutoff, sigma, n_min, weight)
    K = 0
    while K <= _N_CUTOFF_CAP:
        b = _tail_bound(t, K, sigma, n_min, weight)
        if b < pol.tail_tolerance:
            return K, b
        K = K + 1 if K < 16 else K * 2
    raise ConvergenceError(
        f"no n_cutoff <= {_N_CUTOFF_CAP} meets tail tolerance "
        f"{pol.tail_tolerance:.3e} (Re t = {complex(t).real} too large?)")


def log_Z2(s, t, spec: LengthSpectrum, pol: TruncationPolicy = DEFAULT_POLICY) -> ZetaPoint:
    """log of the two-variable product over the truncated spectrum, Re s > 1."""
    s, t = complex(s), complex(t)
    _require_convergent(s)
    prims = _primitives(spec, pol)
    if not prims:
        K = pol.n_cutoff if pol.n_cutoff is not None else 0
        return ZetaPoint(s=s, t=t, log_value=0j,
                         truncation=replace(pol, n_cutoff=K), tail_bound=0.0)
    n_min = min(e.norm for e in prims)
    weight = sum(e.multiplicity for e in prims)
    K, bound = _resolve_n_cutoff(t, pol, s.real, n_min, weight)

    coeffs = [gen_binom(t, n) for n in range(K + 1)]
    total = 0j
    for e in prims:
        w = e.norm ** (-s)
        fac = e.norm ** (-1.0)
        acc = 0j
        for c in coeffs:
            if c != 0:
                acc += c * cmath.log(1.0 - w)
            w *= fac
        total += e.multiplicity * acc
    return ZetaPoint(s=s, t=t, log_value=total,
                     truncation=replace(pol, n_cutoff=K), tail_bound=bound)


def log_Z_classic(s, spec: LengthSpectrum, pol: TruncationPolicy = DEFAULT_POLICY) -> ZetaPoint:
    """log of the weight-tower product prod_p prod_n (1 - N^(-s-n)), Re s > 1."""
    return log_Z2(s, 1.0, spec, pol)


def log_ruelle(s, spec: LengthSpectrum, pol: TruncationPolicy = DEFAULT_POLICY) -> ZetaPoint:
    """log of the single-factor product prod_p (1 - N^(-s))^(-1), Re s > 1."""
    s = complex(s)
    _require_convergent(s)
    total = 0j
    for e in _primitives(spec, pol):
        total -= e.multiplicity * cmath.log(1.0 - e.norm ** (-s))
    return ZetaPoint(s=s, t=0j, log_value=total,
                     truncation=replace(pol, n_cutoff=0), tail_bound=0.0)


def log_Z_rank(s, r: int, spec: LengthSpectrum,
               pol: TruncationPolicy = DEFAULT_POLICY, method: str = "binomial") -> ZetaPoint:
    """log of the rank-r product Z^(r)(s) = prod_{n_1..n_{r-1}} Z(s + sum n_i).

    method="binomial" evaluates through the two-variable product at t=r
    (the multinomial regrouping); method="direct" (r <= 3) nests the sums
    explicitly for cross-checking.
    """
    if r < 1:
        raise DomainError("rank r must be >= 1")
    s = complex(s)
    if method == "binomial":
        pt = log_Z2(s, float(r), spec, pol)
        return replace(pt, t=complex(r))
    if method != "direct":
        raise DomainError(f"unknown method {method!r}")
    if r > 3:
        raise DomainError("direct nested evaluation supported only for r <= 3")
    _require_convergent(s)
    prims = _primitives(spec, pol)
    if not prims:
        return ZetaPoint(s=s, t=complex(r), log_value=0j,
                         truncation=replace(pol, n_cutoff=0), tail_bound=0.0)
    n_min = min(e.norm for e in prims)
    weight = sum(e.multiplicity for e in prims)
    K, bound = _resolve_n_cutoff(float(r), pol, s.real, n_min, weight)
    shifts = [0]
    for _ in range(r - 1):
        shifts = [a + b for a in shifts for b in range(K + 1)]
    total = 0j
    for e in prims:
        acc = 0j
        for shift in shifts:
            for n in range(K + 1 - shift if shift <= K else 0):
                acc += cmath.log(1.0 - e.norm ** (-s - shift - n))
        total += e.multiplicity * acc
    return ZetaPoint(s=s, t=complex(r), log_value=total,
                     truncation=replace(pol, n_cutoff=K), tail_bound=bound)


def with_powers(spec: LengthSpectrum, norm_cutoff: float | None = None) -> LengthSpectrum:
    """Spectrum augmented with all powers of its primitives below the cutoff.

    The log-derivative sums run over every hyperbolic class, i.e. all powers
    of the primitive classes; this helper synthesizes the power entries a
    primitive-only spectrum lacks.
    """
    if norm_cutoff is None:
        norm_cutoff = spec.norm_cutoff
    if not math.isfinite(norm_cutoff):
        raise DomainError("with_powers needs a finite norm cutoff")
    entries = [e for e in spec.entries if e.norm <= norm_cutoff]
    have = {(round(math.log(e.primitive_norm), 9), e.power) for e in entries}
    for e in spec.primitives():
        j = 2
        while e.norm ** j <= norm_cutoff:
            key = (round(e.length, 9), j)
            if key not in have:
                have.add(key)
                entries.append(make_entry(e.norm ** j, e.multiplicity,
                                          primitive_norm=e.norm, power=j))
            j += 1
    entries.sort(key=lambda e: e.norm)
    return LengthSpectrum(entries=tuple(entries), genus=spec.genus,
                          norm_cutoff=norm_cutoff)


def _check_power_closed(spec: LengthSpectrum, pol: TruncationPolicy):
    # the policy cutoff is the range the caller wants covered; fall back to
    # the spectrum's own completeness claim when the policy leaves it open
    cutoff = pol.norm_cutoff if math.isfinite(pol.norm_cutoff) else spec.norm_cutoff
    if not math.isfinite(cutoff):
        cutoff = max((e.norm for e in spec.entries), default=1.0)
    have = {(round(math.log(e.primitive_norm), 9), e.power) for e in spec.entries}
    for e in spec.primitives():
        j = 2
        while e.norm ** j <= cutoff * (1 + 1e-12):
            if (round(e.length, 9), j) not in have:
                raise DomainError(
                    f"spectrum is not power-closed: missing power {j} of the "
                    f"primitive with norm {e.norm:.12g} below cutoff {cutoff:.6g} "
                    "(see with_powers)")
            j += 1


def logderiv_Z2(s, t, spec: LengthSpectrum, pol: TruncationPolicy = DEFAULT_POLICY,
                order: int = 0) -> complex:
    """(-1)^order/order! times the (order+1)-th s-derivative of log Z(s,t).

    Sum over ALL classes (primitives and powers) of
    mult * log N(prim) * (log N)^order * (1 - N^-1)^(-t) * N^(-s) / order!.
    Requires a power-closed spectrum, Re s > 1.
    """
    s, t = complex(s), complex(t)
    if order < 0:
        raise DomainError("order must be >= 0")
    _require_convergent(s)
    _check_power_closed(spec, pol)
    total = 0j
    for e in spec.entries:
        if e.norm > pol.norm_cutoff:
            continue
        total += (e.multiplicity * math.log(e.primitive_norm)
                  * e.length ** order
                  * (1.0 - 1.0 / e.norm) ** (-t)
                  * e.norm ** (-s))
    return total / math.factorial(order)


def ladder_residual(s, t, spec: LengthSpectrum,
                    pol: TruncationPolicy = DEFAULT_POLICY) -> float:
    """|log Z(s,t) - log Z(s,t+1) + log Z(s+1,t+1)| at matched truncation.

    With a shared n_cutoff the three truncated sums telescope through the
    Pascal identity, so the residual is a single dropped boundary term.
    """
    s, t = complex(s), complex(t)
    if pol.n_cutoff is None:
        prims = _primitives(spec, pol)
        if not prims:
            return 0.0
        n_min = min(e.norm for e in prims)
        weight = sum(e.multiplicity for e in prims)
        K, _ = _resolve_n_cutoff(t + 1, pol, s.real, n_min, weight)
        pol = replace(pol, n_cutoff=K)
    a = log_Z2(s, t, spec, pol).log_value
    b = log_Z2(s, t + 1, spec, pol).log_value
    c = log_Z2(s + 1, t + 1, spec, pol).log_value
    return abs(a - b + c)
