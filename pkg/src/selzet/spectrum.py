"""Geodesic length spectra and Laplacian eigenvalue lists.

Enumerates hyperbolic conjugacy classes from group generators (freely and
cyclically reduced words, one representative per cyclic-rotation class),
classifies primitive classes and their powers, and reads/writes the
JSON-lines spectrum/eigenvalue file formats.

Conventions adopted here and relied on by the product/trace modules:
  * a class and its inverse are counted separately (multiplicity 2 for a
    single generator and its inverse word);
  * conjugacy is decided numerically: entries whose norms agree to 1e-9
    relative are merged into one entry with summed multiplicity.
"""

from __future__ import annotations

import json
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, SpectrumFormatError

_NORM_MERGE_RTOL = 1e-9
_DET_TOL = 1e-12
# traces this close to 2 are treated as non-hyperbolic; a co-compact
# torsion-free group has its traces bounded away from 2 (positive systole)
_TRACE_GUARD = 1e-9


def class_norm(M) -> float:
    """Norm of a hyperbolic class: square of the larger eigenvalue.

    Computed from the trace alone, ((|tr| + sqrt(tr^2 - 4))/2)^2, so M and
    -M (the same projective class) give the same value.
    """
    M = np.asarray(M, dtype=float)
    tr = abs(M[0, 0] + M[1, 1])
    if tr <= 2:
        raise DomainError(f"class_norm: |trace|={tr} <= 2, not hyperbolic")
    return ((tr + math.sqrt(tr * tr - 4.0)) / 2.0) ** 2


def _norm_from_trace(tr: float) -> float:
    tr = abs(tr)
    return ((tr + math.sqrt(tr * tr - 4.0)) / 2.0) ** 2


@dataclass(frozen=True)
class GroupPresentation:
    """Generators of a co-compact torsion-free Fuchsian group plus genus."""

    generators: tuple
    genus: int

    def __post_init__(self):
        gens = tuple(np.asarray(g, dtype=float) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for i, g in enumerate(gens):
            if g.shape != (2, 2):
                raise DomainError(f"generator {i} is not a 2x2 matrix")
            det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
            if abs(det - 1.0) > _DET_TOL:
                raise DomainError(f"generator {i}: |det - 1| = {abs(det - 1.0):.3e}")
            if abs(g[0, 0] + g[1, 1]) <= 2.0:
                raise DomainError(f"generator {i} is not hyperbolic (|trace| <= 2)")
        if self.genus < 2:
            raise DomainError("genus must be >= 2")


@dataclass(frozen=True)
class GeodesicEntry:
    """One hyperbolic conjugacy class: a primitive geodesic or a power of one."""

    norm: float
    length: float
    multiplicity: int
    primitive: bool
    primitive_norm: float
    power: int

    def __post_init__(self):
        if self.norm <= 1.0:
            raise DomainError(f"entry norm {self.norm} must exceed 1")
        if abs(self.length - math.log(self.norm)) > 1e-12 * max(1.0, self.length):
            raise DomainError("entry length inconsistent with log(norm)")
        if self.multiplicity < 1:
            raise DomainError("multiplicity must be a positive integer")
        if self.power < 1:
            raise DomainError("power must be a positive integer")
        if self.primitive != (self.power == 1):
            raise DomainError("primitive flag must match power == 1")
        if abs(self.norm - self.primitive_norm ** self.power) > 1e-9 * self.norm:
            raise DomainError("norm is not primitive_norm**power")


def make_entry(norm: float, multiplicity: int = 1, primitive_norm: float | None = None,
               power: int = 1) -> GeodesicEntry:
    """Build a GeodesicEntry with the length filled in from the norm."""
    if primitive_norm is None:
        primitive_norm = norm ** (1.0 / power)
    return GeodesicEntry(norm=float(norm), length=math.log(norm),
                         multiplicity=int(multiplicity), primitive=(power == 1),
                         primitive_norm=float(primitive_norm), power=int(power))


@dataclass(frozen=True)
class LengthSpectrum:
    """Sorted geodesic entries with the cutoff below which they are complete."""

    entries: tuple
    genus: int
    norm_cutoff: float

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        for a, b in zip(entries, entries[1:]):
            if b.norm < a.norm:
                raise DomainError("spectrum entries must be sorted by norm")

    def primitives(self):
        return tuple(e for e in self.entries if e.primitive)

    @property
    def min_norm(self) -> float:
        if not self.entries:
            raise DomainError("empty spectrum has no minimal norm")
        return self.entries[0].norm


@dataclass(frozen=True)
class EigenEntry:
    """One Laplacian eigenvalue with multiplicity."""

    lam: float
    multiplicity: int

    def __post_init__(self):
        if self.lam < 0:
            raise DomainError(f"eigenvalue {self.lam} must be >= 0")
        if self.multiplicity < 1:
            raise DomainError("multiplicity must be a positive integer")


@dataclass(frozen=True)
class EigenSpectrum:
    """Sorted eigenvalue list; complete_from_zero asserts lambda_0 = 0, m = 1."""

    entries: tuple
    genus: int
    complete_from_zero: bool = False

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        for a, b in zip(entries, entries[1:]):
            if b.lam < a.lam:
                raise DomainError("eigenvalues must be sorted ascending")
        if self.complete_from_zero:
            if not entries or entries[0].lam != 0.0 or entries[0].multiplicity != 1:
                raise DomainError(
                    "complete-from-zero list must start with lambda=0, multiplicity 1")


def _inv_letter(letter: int, n_gens: int) -> int:
    return letter - n_gens if letter >= n_gens else letter + n_gens


def _letter_matrices(generators):
    """Alphabet of generator and inverse matrices, duplicates removed.

    A presentation listing both M and M^-1 describes the same alphabet as one
    listing M alone; de-duplication keeps the enumerated class counts equal.
    """
    mats = []
    for g in generators:
        g = np.asarray(g, dtype=float)
        if not any(np.allclose(g, h, rtol=0, atol=1e-12) for h in mats):
            mats.append(g)
    n = len(mats)
    inv = [np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) for m in mats]
    # drop generators whose inverse is itself an earlier generator
    keep, kept = [], []
    for i, m in enumerate(mats):
        if any(np.allclose(inv[i], h, rtol=0, atol=1e-12) for h in kept):
            continue
        keep.append(i)
        kept.append(m)
    mats = [mats[i] for i in keep]
    inv = [inv[i] for i in keep]
    flat = [(m[0, 0], m[0, 1], m[1, 0], m[1, 1]) for m in mats + inv]
    return flat, len(mats)


def _stratum_classes(length: int, alphabet, n_gens: int, norm_cutoff: float):
    """Trace of every canonical cyclically-reduced word of a given length.

    Canonical means the word is the lexicographically smallest among its
    cyclic rotations; each conjugacy class of the free group appears once.
    """
    n_letters = len(alphabet)
    out = []
    word = [0] * length
    mats = [None] * (length + 1)
    mats[0] = (1.0, 0.0, 0.0, 1.0)

    def push(depth, letter):
        a, b, c, d = mats[depth]
        e, f, g, h = alphabet[letter]
        m = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
        if depth % 6 == 5:
            det = m[0] * m[3] - m[1] * m[2]
            if det > 0 and abs(det - 1.0) > 1e-14:
                s = 1.0 / math.sqrt(det)
                m = (m[0] * s, m[1] * s, m[2] * s, m[3] * s)
        mats[depth + 1] = m

    def rec(depth):
        first = word[0]
        prev_inv = _inv_letter(word[depth - 1], n_gens)
        for letter in range(first, n_letters):
            if letter == prev_inv:
                continue  # not freely reduced
            word[depth] = letter
            push(depth, letter)
            if depth + 1 == length:
                if _inv_letter(letter, n_gens) == first:
                    continue  # not cyclically reduced
                w = tuple(word)
                if any(w[i:] + w[:i] < w for i in range(1, length)):
                    continue  # not the canonical rotation
                m = mats[length]
                det = m[0] * m[3] - m[1] * m[2]
                tr = (m[0] + m[3]) / math.sqrt(det) if det > 0 else m[0] + m[3]
                if abs(tr) <= 2.0 + _TRACE_GUARD:
                    continue  # non-hyperbolic class (guard absorbs rounding)
                norm = _norm_from_trace(tr)
                if norm <= norm_cutoff * (1 + _NORM_MERGE_RTOL):
                    out.append(norm)
            else:
                rec(depth + 1)

    for first in range(n_letters):
        word[0] = first
        push(0, first)
        if length == 1:
            m = mats[1]
            tr = m[0] + m[3]
            if abs(tr) > 2.0 + _TRACE_GUARD:
                norm = _norm_from_trace(tr)
                if norm <= norm_cutoff * (1 + _NORM_MERGE_RTOL):
                    out.append(norm)
        else:
            rec(1)
    return out


def _merge_norms(norms):
    """Group a sorted norm list into (norm, multiplicity) at 1e-9 relative."""
    merged = []
    for norm in norms:
        if merged and norm - merged[-1][0] <= _NORM_MERGE_RTOL * norm:
            prev, mult = merged[-1]
            merged[-1] = (prev, mult + 1)
        else:
            merged.append((norm, 1))
    return merged


def enumerate_classes(G: GroupPresentation, max_word_len: int,
                      norm_cutoff: float) -> LengthSpectrum:
    """Hyperbolic conjugacy classes as words in the generators.

    Freely reduced words up to max_word_len are cyclically reduced and kept
    once per cyclic-rotation class; a class and its inverse stay distinct.
    Non-hyperbolic words and norms above the cutoff are dropped, and classes
    with numerically equal norms are merged into multiplicities.  The result
    is deterministic and independent of SELZET_THREADS.
    """
    if max_word_len < 1:
        raise DomainError("max_word_len must be >= 1")
    if norm_cutoff <= 1.0:
        raise DomainError("norm_cutoff must exceed 1")
    alphabet, n_gens = _letter_matrices(G.generators)
    if n_gens == 0:
        return LengthSpectrum(entries=(), genus=G.genus, norm_cutoff=norm_cutoff)

    min_gen_length = min(math.log(_norm_from_trace(m[0] + m[3]))
                         for m in alphabet if abs(m[0] + m[3]) > 2.0)
    if (max_word_len + 1) * min_gen_length <= math.log(norm_cutoff):
        warnings.warn(
            "norm_cutoff %.6g may exceed the completeness bound exp(%d * %.6g) "
            "reachable at max_word_len %d; the spectrum can miss classes below "
            "the cutoff" % (norm_cutoff, max_word_len + 1, min_gen_length,
                            max_word_len),
            stacklevel=2)

    lengths = list(range(1, max_word_len + 1))
    threads = int(os.environ.get("SELZET_THREADS", "1"))
    if threads > 1 and len(lengths) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_stratum = list(pool.map(
                lambda L: _stratum_classes(L, alphabet, n_gens, norm_cutoff),
                lengths))
    else:
        per_stratum = [_stratum_classes(L, alphabet, n_gens, norm_cutoff)
                       for L in lengths]

    norms = sorted(n for stratum in per_stratum for n in stratum)
    entries = tuple(make_entry(norm, mult) for norm, mult in _merge_norms(norms))
    spec = LengthSpectrum(entries=entries, genus=G.genus, norm_cutoff=norm_cutoff)
    return primitive_decomposition(spec)


def primitive_decomposition(spec: LengthSpectrum) -> LengthSpectrum:
    """Mark each entry as a power of the smallest norm whose integer power it is."""
    entries = []
    for e in spec.entries:
        best = None
        for cand in entries:
            if not cand.primitive or cand.norm >= e.norm:
                continue
            j = round(e.length / cand.length)
            if j >= 2 and abs(e.norm - cand.norm ** j) <= 1e-9 * e.norm:
                best = (cand.norm, j)
                break  # entries are sorted, first match is the smallest
        if best is None:
            entries.append(replace(e, primitive=True, primitive_norm=e.norm, power=1))
        else:
            entries.append(replace(e, primitive=False, primitive_norm=best[0],
                                   power=best[1]))
    return LengthSpectrum(entries=tuple(entries), genus=spec.genus,
                          norm_cutoff=spec.norm_cutoff)


def _fmt(x: float) -> str:
    return "%.17g" % x


def save_spectrum(spec: LengthSpectrum, path) -> None:
    """Write the JSON-lines spectrum format (17 significant digits)."""
    with open(path, "w") as fh:
        fh.write('{"kind":"length_spectrum","genus":%d,"norm_cutoff":%s}\n'
                 % (spec.genus, _fmt(spec.norm_cutoff)))
        for e in spec.entries:
            fh.write('{"norm":%s,"multiplicity":%d,"primitive":%s,'
                     '"primitive_norm":%s,"power":%d}\n'
                     % (_fmt(e.norm), e.multiplicity,
                        "true" if e.primitive else "false",
                        _fmt(e.primitive_norm), e.power))


def _read_jsonl(path, expect_kind):
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines()]
    if not lines or not lines[0].strip():
        raise SpectrumFormatError("missing header line", line_number=1)
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise SpectrumFormatError(f"bad header: {exc}", line_number=1) from exc
    if header.get("kind") != expect_kind:
        raise SpectrumFormatError(
            f'expected kind "{expect_kind}", got {header.get("kind")!r}',
            line_number=1)
    rows = []
    for i, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        try:
            rows.append((i, json.loads(ln)))
        except json.JSONDecodeError as exc:
            raise SpectrumFormatError(f"bad entry: {exc}", line_number=i) from exc
    return header, rows


def load_spectrum(path) -> LengthSpectrum:
    """Read the JSON-lines spectrum format with per-line error reporting."""
    header, rows = _read_jsonl(path, "length_spectrum")
    try:
        genus = int(header["genus"])
        cutoff = float(header["norm_cutoff"])
    except KeyError as exc:
        raise SpectrumFormatError(f"header missing {exc}", line_number=1) from exc
    entries = []
    for i, row in rows:
        try:
            entries.append(GeodesicEntry(
                norm=float(row["norm"]), length=math.log(float(row["norm"])),
                multiplicity=int(row["multiplicity"]),
                primitive=bool(row["primitive"]),
                primitive_norm=float(row["primitive_norm"]),
                power=int(row["power"])))
        except KeyError as exc:
            raise SpectrumFormatError(f"entry missing {exc}", line_number=i) from exc
        except (ValueError, DomainError) as exc:
            raise SpectrumFormatError(str(exc), line_number=i) from exc
    try:
        return LengthSpectrum(entries=tuple(entries), genus=genus,
                              norm_cutoff=cutoff)
    except DomainError as exc:
        raise SpectrumFormatError(str(exc)) from exc


def save_eigen(eig: EigenSpectrum, path) -> None:
    """Write the JSON-lines eigenvalue format (17 significant digits)."""
    with open(path, "w") as fh:
        fh.write('{"kind":"eigen_spectrum","genus":%d,"complete_from_zero":%s}\n'
                 % (eig.genus, "true" if eig.complete_from_zero else "false"))
        for e in eig.entries:
            fh.write('{"lambda":%s,"multiplicity":%d}\n'
                     % (_fmt(e.lam), e.multiplicity))


def load_eigen(path) -> EigenSpectrum:
    """Read the JSON-lines eigenvalue format with per-line error reporting."""
    header, rows = _read_jsonl(path, "eigen_spectrum")
    try:
        genus = int(header["genus"])
    except KeyError as exc:
        raise SpectrumFormatError(f"header missing {exc}", line_number=1) from exc
    cfz = bool(header.get("complete_from_zero", False))
    entries = []
    for i, row in rows:
        try:
            entries.append(EigenEntry(lam=float(row["lambda"]),
                                      multiplicity=int(row["multiplicity"])))
        except KeyError as exc:
            raise SpectrumFormatError(f"entry missing {exc}", line_number=i) from exc
        except (ValueError, DomainError) as exc:
            raise SpectrumFormatError(str(exc), line_number=i) from exc
    try:
        return EigenSpectrum(entries=tuple(entries), genus=genus,
                             complete_from_zero=cfz)
    except DomainError as exc:
        raise SpectrumFormatError(str(exc)) from exc
