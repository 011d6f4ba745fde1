"""Exact aperiodic correlation, complementarity checks, distances, envelopes.

The aperiodic cross-correlation of sequences ``a`` and ``b`` of length L at
shift ``tau >= 0`` is ``sum_{i=0}^{L-1-tau} a[i+tau] * conj(b[i])``; negative
shifts satisfy ``C_{a,b}(-tau) = conj(C_{b,a}(tau))``.  For polyphase
sequences every term is a root of unity, so each correlation value is an
element of Z[omega] and is computed here exactly: the terms are histogrammed
by phase difference and wrapped into a :class:`~cskit.cyclo.CycloValue`.

A list of n sequences is a complementary set when their autocorrelations sum
to zero at every nonzero shift (the sum at shift 0 is then n*L).  The
instantaneous envelope power of the OFDM-style signal built from ``a`` is

    P(t) = A(0) + 2 * Re sum_{tau=1}^{L-1} A(tau) * exp(2j*pi*tau*t),

with t normalized to one symbol period, so envelope statistics (peak-to-mean
ratio and its autocorrelation upper bound) also come straight from the exact
autocorrelation.

Masked sequences are supported throughout: positions removed by a restriction
contribute the complex value 0, and the mean power used for normalization is
the number of live positions, i.e. A(0).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cyclo import CycloValue
from .errors import ParseError
from .gbf import PolyphaseSeq

__all__ = [
    "CorrVector",
    "AacfVector",
    "cross_corr",
    "aacf",
    "set_aacf",
    "is_cs",
    "lee_weight",
    "euclid_sq_weight",
    "lee_dist",
    "euclid_sq_dist",
    "min_distances",
    "envelope_power",
    "pmepr",
    "pmepr_autocorr_bound",
    "aacf_report",
    "set_report",
    "read_sequences",
    "write_sequences",
]


def _corr_coeff_matrix(a: PolyphaseSeq, b: PolyphaseSeq) -> np.ndarray:
    """Integer basis coefficients of C_{a,b}(tau) for tau = 0 .. L-1.

    Row tau holds q/2 integers c_j with C(tau) = sum_j c_j * omega^j.  Exact:
    the phase differences over the overlap are counted with ``bincount`` and
    the upper half of the histogram is folded in with a sign flip.
    """
    if a.q != b.q:
        raise ValueError(f"mixed moduli: {a.q} vs {b.q}")
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    q, L, half = a.q, len(a), a.q // 2
    out = np.zeros((L, half), dtype=np.int64)
    pa, pb = a.phases, b.phases
    ma, mb = a.mask, b.mask
    for tau in range(L):
        live = ma[tau:] & mb[: L - tau]
        if not live.any():
            continue
        diff = (pa[tau:][live] - pb[: L - tau][live]) % q
        counts = np.bincount(diff, minlength=q)
        out[tau] = counts[:half] - counts[half:]
    return out


def _wrap_rows(q: int, coeffs: np.ndarray) -> tuple[CycloValue, ...]:
    return tuple(CycloValue(q, tuple(int(c) for c in row)) for row in coeffs)


@dataclass(frozen=True)
class CorrVector:
    """Exact correlation values at shifts 0 .. L-1."""

    q: int
    values: tuple[CycloValue, ...]

    @property
    def L(self) -> int:
        return len(self.values)

    @property
    def peak(self) -> CycloValue:
        return self.values[0]

    def at(self, tau: int) -> CycloValue:
        if not 0 <= tau < self.L:
            raise IndexError(f"shift {tau} outside [0, {self.L})")
        return self.values[tau]

    def nonzero_shifts(self) -> list[int]:
        return [tau for tau in range(1, self.L) if self.values[tau]]

    def to_json(self) -> dict:
        off = [
            {"tau": tau, "value": list(self.values[tau].coeffs), "abs": abs(self.values[tau])}
            for tau in self.nonzero_shifts()
        ]
        return {
            "L": self.L,
            "q": self.q,
            "peak": list(self.peak.coeffs),
            "offpeak": off,
        }


class AacfVector(CorrVector):
    """Autocorrelation (of one sequence or summed over a set).

    Adds negative-shift access via conjugate symmetry,
    ``A(-tau) = conj(A(tau))``.
    """

    def at(self, tau: int) -> CycloValue:
        if abs(tau) >= self.L:
            raise IndexError(f"shift {tau} outside (-{self.L}, {self.L})")
        return self.values[tau] if tau >= 0 else self.values[-tau].conj()

    def offpeak_is_zero(self) -> bool:
        return not self.nonzero_shifts()


def cross_corr(a: PolyphaseSeq, b: PolyphaseSeq) -> CorrVector:
    """Exact aperiodic cross-correlation at nonnegative shifts.

    For negative shifts use ``cross_corr(b, a).at(tau).conj()``.
    """
    coeffs = _corr_coeff_matrix(a, b)
    return CorrVector(a.q, _wrap_rows(a.q, coeffs))


def aacf(a: PolyphaseSeq) -> AacfVector:
    """Exact aperiodic autocorrelation of a single sequence."""
    coeffs = _corr_coeff_matrix(a, a)
    return AacfVector(a.q, _wrap_rows(a.q, coeffs))


def _set_coeff_matrix(seqs: Sequence[PolyphaseSeq]) -> np.ndarray:
    if not seqs:
        raise ValueError("empty sequence set")
    q, L = seqs[0].q, len(seqs[0])
    total = np.zeros((L, q // 2), dtype=np.int64)
    for s in seqs:
        if s.q != q or len(s) != L:
            raise ValueError("sequences in a set must share modulus and length")
        total += _corr_coeff_matrix(s, s)
    return total


def set_aacf(seqs: Sequence[PolyphaseSeq]) -> AacfVector:
    """Sum of the member autocorrelations, exactly."""
    total = _set_coeff_matrix(seqs)
    return AacfVector(seqs[0].q, _wrap_rows(seqs[0].q, total))


def is_cs(seqs: Sequence[PolyphaseSeq]) -> bool:
    """True when the summed autocorrelation vanishes at every nonzero shift."""
    return set_aacf(seqs).offpeak_is_zero()


# -- symbol-wise weights and distances ----------------------------------------


def _phase_array(x: PolyphaseSeq | Sequence[int] | np.ndarray, q: int | None) -> tuple[np.ndarray, int]:
    if isinstance(x, PolyphaseSeq):
        if not x.is_full:
            raise ValueError("weights and distances are defined for full sequences only")
        return x.phases, x.q
    if q is None:
        raise ValueError("q is required when passing a bare symbol array")
    return np.asarray(x, dtype=np.int64) % q, q


def lee_weight(x: PolyphaseSeq | Sequence[int], q: int | None = None) -> int:
    """Sum over symbols of min(a, q - a)."""
    arr, q = _phase_array(x, q)
    return int(np.minimum(arr, q - arr).sum())


def euclid_sq_weight(x: PolyphaseSeq | Sequence[int], q: int | None = None) -> float:
    """Squared Euclidean distance of omega^x from the all-ones sequence.

    Per symbol this is |omega^a - 1|^2 = 4 sin^2(pi a / q).
    """
    arr, q = _phase_array(x, q)
    return float(np.sum(4.0 * np.sin(np.pi * arr / q) ** 2))


def lee_dist(a, b, q: int | None = None) -> int:
    xa, qa = _phase_array(a, q)
    xb, qb = _phase_array(b, q)
    if qa != qb or len(xa) != len(xb):
        raise ValueError("distance needs equal-length sequences over one modulus")
    return lee_weight((xa - xb) % qa, qa)


def euclid_sq_dist(a, b, q: int | None = None) -> float:
    xa, qa = _phase_array(a, q)
    xb, qb = _phase_array(b, q)
    if qa != qb or len(xa) != len(xb):
        raise ValueError("distance needs equal-length sequences over one modulus")
    return euclid_sq_weight((xa - xb) % qa, qa)


def min_distances(seqs: Sequence[PolyphaseSeq | Sequence[int]], q: int | None = None) -> tuple[int, float]:
    """Minimum pairwise (Lee, squared-Euclidean) distances over a code.

    Duplicate sequences are reported with a warning and the offending pairs
    are skipped, so the result describes the distinct codewords.
    """
    arrs = []
    for s in seqs:
        arr, qq = _phase_array(s, q)
        q = qq
        arrs.append(arr)
    if len(arrs) < 2:
        raise ValueError("need at least two sequences")
    mat = np.stack(arrs)
    best_lee: int | None = None
    best_euc: float | None = None
    dupes = 0
    for i in range(len(mat) - 1):
        diff = (mat[i + 1 :] - mat[i]) % q
        nz = diff.any(axis=1)
        dupes += int((~nz).sum())
        if not nz.any():
            continue
        live = diff[nz]
        lee = np.minimum(live, q - live).sum(axis=1).min()
        euc = (4.0 * np.sin(np.pi * live / q) ** 2).sum(axis=1).min()
        best_lee = int(lee) if best_lee is None else min(best_lee, int(lee))
        best_euc = float(euc) if best_euc is None else min(best_euc, float(euc))
    if dupes:
        warnings.warn(f"{dupes} duplicate sequence pair(s) skipped in distance computation")
    if best_lee is None:
        raise ValueError("all sequences are identical; no nonzero distance exists")
    return best_lee, best_euc


# -- envelope statistics -------------------------------------------------------


def _acf_complex(a: PolyphaseSeq) -> np.ndarray:
    coeffs = _corr_coeff_matrix(a, a)
    basis = np.exp(2j * np.pi * np.arange(a.q // 2) / a.q)
    return coeffs @ basis


def envelope_power(a: PolyphaseSeq, t: float | Sequence[float] | np.ndarray) -> np.ndarray | float:
    """Instantaneous power P(t) at normalized time(s) t in [0, 1)."""
    acf = _acf_complex(a)
    tt = np.asarray(t, dtype=float)
    tau = np.arange(1, len(a))
    osc = np.exp(2j * np.pi * np.outer(tt, tau))
    vals = acf[0].real + 2.0 * (osc @ acf[1:]).real
    return vals if tt.ndim else float(vals[0])


def _power_grid(a: PolyphaseSeq, oversample: int) -> np.ndarray:
    if oversample < 1:
        raise ValueError("oversample must be >= 1")
    acf = _acf_complex(a)
    n = oversample * len(a)
    padded = np.zeros(n, dtype=complex)
    padded[: len(acf)] = acf
    # 2*Re sum_tau A(tau) e^{2 pi i tau k / n} - A(0), evaluated for all k by an inverse FFT
    return 2.0 * (np.fft.ifft(padded) * n).real - acf[0].real


def pmepr(a: PolyphaseSeq, oversample: int = 64) -> float:
    """Peak-to-mean envelope power ratio, sampled on an oversampled grid.

    The grid has ``oversample * L`` equispaced points per symbol period; the
    mean power equals A(0) (= L for a full sequence).  The returned value is
    a slight underestimate of the true supremum, while
    :func:`pmepr_autocorr_bound` gives a certified overestimate.
    """
    grid = _power_grid(a, oversample)
    a0 = float(a.mask.sum())
    return float(grid.max()) / a0


def pmepr_autocorr_bound(a: PolyphaseSeq) -> float:
    """Upper bound (A(0) + 2 sum_{tau>0} |A(tau)|) / A(0) on the exact PMEPR."""
    acf = _acf_complex(a)
    a0 = acf[0].real
    return float((a0 + 2.0 * np.abs(acf[1:]).sum()) / a0)


# -- reports -------------------------------------------------------------------


def aacf_report(a: PolyphaseSeq, oversample: int = 64) -> dict:
    """JSON-ready summary of one sequence: exact AACF plus envelope numbers."""
    vec = aacf(a)
    report = vec.to_json()
    report["pmepr_grid"] = pmepr(a, oversample)
    report["pmepr_bound"] = pmepr_autocorr_bound(a)
    report["oversample"] = oversample
    return report


def set_report(seqs: Sequence[PolyphaseSeq]) -> dict:
    """JSON-ready summary of a candidate complementary set."""
    vec = set_aacf(seqs)
    report = vec.to_json()
    report["n"] = len(seqs)
    report["is_cs"] = vec.offpeak_is_zero()
    return report


# -- sequence file format ------------------------------------------------------


def read_sequences(text: str, q: int) -> list[PolyphaseSeq]:
    """Parse sequences from text.

    Lines starting with ``#`` (and inline ``#`` comments) are ignored.  Each
    remaining line carries one sequence as whitespace-separated symbols; as a
    convenience, a file whose every line holds a single symbol is read as one
    column-format sequence.
    """
    rows: list[list[int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        row = []
        for tok in body.split():
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"line {lineno}: {tok!r} is not an integer") from None
            if not 0 <= v < q:
                raise ParseError(f"line {lineno}: symbol {v} out of range for q={q}")
            row.append(v)
        rows.append(row)
    if not rows:
        raise ParseError("no sequences found")
    if len(rows) > 1 and all(len(r) == 1 for r in rows):
        rows = [[r[0] for r in rows]]
    if len({len(r) for r in rows}) != 1:
        raise ParseError("sequences in one file must share a common length")
    return [PolyphaseSeq(q, row) for row in rows]


def write_sequences(seqs: Sequence[PolyphaseSeq], header: Sequence[str] = ()) -> str:
    """Render sequences one per line, with optional ``#`` header lines."""
    lines = [f"# {h}" if not h.startswith("#") else h for h in header]
    for s in seqs:
        if not s.is_full:
            raise ValueError("masked sequences have no text representation")
        lines.append(" ".join(str(int(p)) for p in s.phases))
    return "\n".join(lines) + "\n"
