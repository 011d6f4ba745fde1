"""Codebook accounting: counting formulas, enumerators, rates, distances.

Everything here concerns codes of length ``2^m`` over ``Z_q`` (q = 2**h)
whose codewords come from polynomials of bounded *effective degree*: the
degree after discounting factors of two in the coefficients (see
``GbfPoly.effective_degree``).  ``F(r, m, h)`` below denotes the set of such
polynomials with effective degree at most r; it is closed under addition, so
the corresponding codes are linear or unions of cosets of linear codes, and
minimum distances equal minimum nonzero weights.

Three kinds of results live here:

* closed-form sizes — the complementary-set families with PMEPR bounds
  4/6/8 (:func:`family_size`), coset codes built from path representatives
  (:func:`coset_code_size`), and the unioned codes with PMEPR at most 4 and
  8 (:func:`union_code_size_pmepr4` / :func:`union_code_size_pmepr8`);
* explicit enumerators (:func:`enumerate_codebook`) generating exactly the
  counted polynomials, so the closed forms can be confronted with brute
  force;
* exhaustive minimum-distance computation for the bounded-effective-degree
  code (:func:`erm_min_distances`), by direct streaming enumeration when the
  code is small enough and otherwise by an exhaustive per-stratum argument
  (every codeword is 2^i times a polynomial with an odd coefficient; the
  binary residue is a Reed–Muller word, enumerated in full, and explicit
  monomial witnesses attain the resulting bound).

Printed rate tables from the literature are embedded as fixtures with their
original spellings; :func:`golden_report` confronts them entry by entry with
the closed forms and records which entries cannot be reproduced (they are
carried as documented discrepancies, not silently patched).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .construct import indicator_poly, path_quadratic, standard_golay_gbfs
from .errors import EnumerationError
from .gbf import GbfPoly, Restriction

__all__ = [
    "log2_f_count",
    "enumerate_f_polys",
    "family_size",
    "pmepr_family_sizes",
    "rate",
    "log2_coset_count",
    "coset_code_size",
    "union_code_size_pmepr4",
    "union_code_size_pmepr8",
    "erm_distance_formulas",
    "erm_min_distances",
    "rm_min_weight",
    "enumerate_codebook",
    "codeword_matrix",
    "rate_rows",
    "golden_report",
]


# -- bounded-effective-degree polynomial counting -------------------------------


def _f_generators(r: int, m: int, h: int) -> list[tuple[int, int, int]]:
    """Generators of F(r, m, h) as (monomial mask, coefficient step, order).

    A coefficient on a degree-d monomial must be divisible by
    2^max(0, d - r); the allowed coefficients form the cyclic group generated
    by that power of two.
    """
    q = 1 << h
    gens = []
    for mask in range(1 << m):
        v = max(0, mask.bit_count() - r)
        if v < h:
            gens.append((mask, 1 << v, 1 << (h - v)))
    return gens


def log2_f_count(r: int, m: int, h: int) -> int:
    """log2 of the number of polynomials on m variables over Z_{2^h} with
    effective degree at most r."""
    if m < 0 or h < 1:
        raise ValueError("need m >= 0 and h >= 1")
    total = 0
    for d in range(m + 1):
        free_bits = max(0, h - max(0, d - r))
        total += math.comb(m, d) * free_bits
    return total


def enumerate_f_polys(
    r: int, k: int, h: int, *, m: int | None = None, variables: Sequence[int] | None = None
) -> Iterator[GbfPoly]:
    """All polynomials of effective degree <= r on k chosen variables.

    By default the variables are x0..x{k-1} of a k-variable polynomial; pass
    ``m`` and ``variables`` to embed them in a larger domain (used for the
    coset codes, whose ingredient functions live on the top k variables).
    """
    if variables is None:
        variables = list(range(k))
    if m is None:
        m = k
    if len(variables) != k:
        raise ValueError("need exactly k variable indices")
    q = 1 << h
    gens = _f_generators(r, k, h)
    if sum(math.log2(cnt) for _, _, cnt in gens) > 22:
        raise EnumerationError("more than 2^22 polynomials requested")
    embedded = []
    for mask, step, count in gens:
        big = 0
        for a in range(k):
            if (mask >> a) & 1:
                big |= 1 << variables[a]
        embedded.append((big, step, count))
    for combo in itertools.product(*(range(cnt) for _, _, cnt in embedded)):
        terms = [(mask, a * step) for (mask, step, _), a in zip(embedded, combo) if a]
        yield GbfPoly.from_terms(q, m, terms)


# -- complementary-set family sizes ---------------------------------------------


def _exact_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer: {x}")
    return int(x)


def family_size(m: int, q: int, bound: int) -> int:
    """Guaranteed codebook size at PMEPR at most ``bound`` (4, 6, or 8).

    These count distinct sequences produced by the balanced construction
    (bound 4 and part of 8) and the doubled construction (bound 6 and the
    other part of 8) with one or two restricted variables.
    """
    if q < 2 or q % 2:
        raise ValueError(f"modulus must be even, got {q}")
    fact = math.factorial
    if bound == 4:
        if m < 5:
            raise ValueError("the PMEPR-4 family needs m >= 5")
        count = Fraction(fact(m), 2) * (Fraction(fact(m - 2), 2) - 1) * q ** (2 * m - 3) * (q - 1) ** 2
    elif bound == 6:
        if m < 4:
            raise ValueError("the PMEPR-6 family needs m >= 4")
        count = (2 * fact(m) + Fraction(fact(m) * fact(m - 2) * (m - 3), 4)) * q ** (2 * m - 2) * (q - 1) ** 2
    elif bound == 8:
        if m < 6:
            raise ValueError("the PMEPR-8 family needs m >= 6")
        count = Fraction(3 * fact(m), 4) * (Fraction(fact(m - 3), 2) - 1) * q ** (3 * m - 8) * (q - 1) ** 2
        count += m * (m - 2) * Fraction(fact(m - 2), 2) ** 2 * q ** (2 * m - 3) * (q - 1) ** 2
    else:
        raise ValueError(f"no family with PMEPR bound {bound}")
    return _exact_int(count, f"family size (bound {bound}, m={m})")


def pmepr_family_sizes(m: int, q: int) -> dict[int, int]:
    """Sizes of the PMEPR-4/6/8 families that are defined at this m."""
    out = {}
    for bound, m_min in ((4, 5), (6, 4), (8, 6)):
        if m >= m_min:
            out[bound] = family_size(m, q, bound)
    return out


def rate(size: int, m: int) -> float:
    """Code rate log2(size) / 2^m of a length-2^m codebook."""
    if size <= 0:
        raise ValueError("empty codebook has no rate")
    return math.log2(size) / (1 << m)


# -- coset codes over restricted variables --------------------------------------


def log2_coset_count(m: int, k: int, r: int, h: int, *, excl: bool = False) -> int:
    """log2 size of the linear code of polynomials linear in the first m-k
    variables with bounded-effective-degree ingredient functions of the top k.

    Couplings x_i * g_i(top k) for i < m-k draw g_i from F(r-1, k, h) and the
    free part g from F(r, k, h); with ``excl=True`` one designated coupling
    (the vertex used by the isolated-vertex representatives) is omitted.
    """
    if not 0 <= k < m:
        raise ValueError(f"need 0 <= k < m, got k={k}, m={m}")
    couplings = (m - k - 1) if excl else (m - k)
    return couplings * log2_f_count(r - 1, k, h) + log2_f_count(r, k, h)


def _path_class_count(n: int) -> int:
    """Paths on n labelled vertices up to reversal."""
    if n < 1:
        raise ValueError("need at least one vertex")
    return 1 if n == 1 else math.factorial(n) // 2


def coset_code_size(m: int, k: int, r: int, h: int) -> int:
    """Size of the code of path-representative cosets: the baseline
    comparison code with PMEPR at most 2^{k+1}.

    Representatives assign one of (m-k)!/2 path classes per restriction,
    varying only with the first min(r+h-3, k) restricted bits so that the
    representative keeps effective degree at most r.
    """
    if m - k < 2:
        raise ValueError("representatives need at least two path vertices")
    if r + h < 3:
        raise ValueError("need r + h >= 3")
    t = min(r + h - 3, k)
    return (1 << log2_coset_count(m, k, r, h)) * _path_class_count(m - k) ** (1 << t)


def union_code_size_pmepr4(m: int, r: int, h: int) -> int:
    """Size of the two-part union code with PMEPR at most 4 (one restricted
    variable; path cosets plus isolated-vertex cosets)."""
    if m <= 3:
        raise ValueError("needs m > 3")
    if not ((h == 1 and 2 <= r <= 3) or (h > 1 and 1 <= r <= 2)):
        raise ValueError(f"(r={r}, h={h}) outside the stated range")
    rp = min(r, 2)
    exp = 1 << min(r + h - 3, 1)
    first = (1 << log2_coset_count(m, 1, rp, h)) * _path_class_count(m - 1) ** exp
    second = (1 << log2_coset_count(m, 1, rp, h, excl=True)) * _path_class_count(m - 2) ** exp
    return first + second


def _pmepr8_first_two(m: int, r: int, h: int) -> int:
    rpp = min(r, 3)
    exp = 1 << min(r + h - 3, 2)
    first = (1 << log2_coset_count(m, 2, rpp, h)) * _path_class_count(m - 2) ** exp
    second = 3 * (1 << log2_coset_count(m, 2, rpp, h, excl=True)) * _path_class_count(m - 3) ** exp
    return first + second


def _pmepr8_third(m: int, r: int, h: int) -> int:
    rp = min(r, 2)
    exp = 2 * min(1 << (r + h - 3), 1)
    return (1 << log2_coset_count(m, 1, rp, h)) * _path_class_count(m - 2) ** exp


def union_code_size_pmepr8(m: int, r: int, h: int) -> int:
    """Size of the union code with PMEPR at most 8 (two restricted variables,
    plus — in the lower part of the r range — two-isolated-vertex cosets)."""
    if m <= 4:
        raise ValueError("needs m > 4")
    if r + h < 3:
        raise ValueError("need r + h >= 3")
    if (h == 1 and 2 <= r <= 3) or (h > 1 and 1 <= r <= 2):
        return _pmepr8_first_two(m, r, h) + _pmepr8_third(m, r, h)
    if (h == 1 and r == 4) or (h > 1 and r == 3):
        return _pmepr8_first_two(m, r, h)
    raise ValueError(f"(r={r}, h={h}) outside the stated range")


# -- minimum distances of the bounded-effective-degree code --------------------


def erm_distance_formulas(r: int, m: int, h: int) -> tuple[int, float]:
    """Claimed minimum Lee and squared Euclidean distances: 2^{m-r} and
    2^{m-r+2} sin^2(pi / 2^h)."""
    return 1 << (m - r), float(2 ** (m - r + 2) * math.sin(math.pi / 2**h) ** 2)


def rm_min_weight(r: int, m: int) -> int:
    """Exhaustive minimum weight of the binary Reed–Muller code RM(r, m)."""
    if r < 0:
        return 1 << m  # no nonzero codewords below degree 0; weight of 'all ones' never applies
    r = min(r, m)
    idx = np.arange(1 << m, dtype=np.int64)
    cols = [((idx & mask) == mask).astype(np.uint8) for mask in range(1 << m) if mask.bit_count() <= r]
    span = np.zeros((1, 1 << m), dtype=np.uint8)
    for col in cols:
        span = np.concatenate([span, span ^ col[None, :]])
        if len(span) > 1 << 17:
            raise EnumerationError("Reed–Muller code too large for exhaustive weights")
    weights = span.sum(axis=1)
    return int(weights[weights > 0].min())


def _euclid_table(q: int) -> np.ndarray:
    return 4.0 * np.sin(np.pi * np.arange(q) / q) ** 2


def _min_weights_direct(gens: list[tuple[int, int, int]], q: int, m: int, chunk_log2: int = 21) -> tuple[int, float]:
    """Stream every nonzero span element of the generators, tracking minimum
    Lee and squared Euclidean weights.  Exact and exhaustive."""
    L = 1 << m
    idx = np.arange(L, dtype=np.int64)
    cols = {mask: ((idx & mask) == mask).astype(np.int16) for mask, _, _ in gens}
    order = sorted(gens, key=lambda g: g[2], reverse=True)
    prefix: list[tuple[int, int, int]] = []
    size = 1
    for g in order:
        if size * g[2] > 1 << chunk_log2:
            break
        prefix.append(g)
        size *= g[2]
    outer = order[len(prefix) :]
    block = np.zeros((1, L), dtype=np.int16)
    for mask, step, count in prefix:
        mults = (np.arange(count, dtype=np.int16) * step) % q
        block = (block[:, None, :] + mults[None, :, None] * cols[mask][None, None, :]).reshape(-1, L) % q
    etab = _euclid_table(q)
    best_lee = None
    best_euc = None
    for combo in itertools.product(*(range(cnt) for _, _, cnt in outer)):
        offset = np.zeros(L, dtype=np.int16)
        for (mask, step, _), a in zip(outer, combo):
            offset += (a * step) * cols[mask]
        v = (block + offset) % q
        nz = v.any(axis=1)
        if not nz.any():
            continue
        lee = np.minimum(v, q - v).sum(axis=1, dtype=np.int64)
        lee_min = int(lee[nz].min())
        euc_min = float(etab[v].sum(axis=1)[nz].min())
        best_lee = lee_min if best_lee is None else min(best_lee, lee_min)
        best_euc = euc_min if best_euc is None else min(best_euc, euc_min)
    assert best_lee is not None, "span contained only the zero polynomial"
    return best_lee, best_euc


def _min_weights_layered(r: int, m: int, h: int) -> tuple[int, float]:
    """Exhaustive per-stratum minimum weights of F(r, m, h).

    Every nonzero f is 2^i * g with g carrying an odd coefficient and
    deg(g) <= min(r+i, m), so g mod 2 is a nonzero word of the (exhaustively
    enumerated) binary Reed–Muller code of that order.  Where g is odd the
    symbol 2^i * odd has Lee value at least 2^i and squared Euclidean value
    at least 4 sin^2(pi / 2^{h-i}) — both finite per-residue checks — which
    bounds each stratum from below; the monomial witnesses 2^i * x_T with
    |T| = min(r+i, m) attain the bounds exactly.
    """
    q = 1 << h
    etab = _euclid_table(q)
    best_lee = None
    best_euc = None
    for i in range(h):
        sub = 1 << (h - i)  # the symbols 2^i * u (u odd) live on a 2^{h-i} grid
        odd_lee = min(min(((1 << i) * u) % q, q - ((1 << i) * u) % q) for u in range(1, sub, 2))
        odd_euc = min(float(etab[((1 << i) * u) % q]) for u in range(1, sub, 2))
        assert odd_lee == 1 << i
        rm_wt = rm_min_weight(min(r + i, m), m)
        lee_bound = (1 << i) * rm_wt
        euc_bound = odd_euc * rm_wt
        # witness: 2^i times a monomial of degree min(r+i, m)
        d = min(r + i, m)
        wit_ones = 1 << (m - d)
        wit_lee = (1 << i) * wit_ones
        wit_euc = float(etab[(1 << i) % q]) * wit_ones
        assert wit_lee >= lee_bound and wit_euc >= euc_bound - 1e-12
        best_lee = wit_lee if best_lee is None else min(best_lee, wit_lee)
        best_euc = wit_euc if best_euc is None else min(best_euc, wit_euc)
        # the bound for this stratum can never undercut the global witnesses
        assert lee_bound <= wit_lee and euc_bound <= wit_euc + 1e-12
    return best_lee, best_euc


def erm_min_distances(r: int, m: int, h: int, method: str = "auto") -> tuple[int, float]:
    """Minimum Lee and squared Euclidean distances of the code of all
    effective-degree-<= r polynomials on m variables over Z_{2^h}.

    The code is linear, so distances equal minimum nonzero weights.  With
    ``method="direct"`` every codeword is enumerated (streamed in chunks);
    ``"layered"`` uses the per-stratum exhaustion described in the module
    docstring; ``"auto"`` enumerates directly up to 2^24 codewords and layers
    beyond that.
    """
    if method not in ("auto", "direct", "layered"):
        raise ValueError(f"unknown method {method!r}")
    s = log2_f_count(r, m, h)
    if method == "layered" or (method == "auto" and s > 24):
        return _min_weights_layered(r, m, h)
    return _min_weights_direct(_f_generators(r, m, h), 1 << h, m)


# -- explicit codebook enumerators ----------------------------------------------


def _paths_up_to_reversal(verts: Sequence[int]) -> list[tuple[int, ...]]:
    verts = list(verts)
    if len(verts) == 1:
        return [tuple(verts)]
    return [p for p in itertools.permutations(verts) if p[0] < p[-1]]


def _coset_polys(m: int, k: int, r: int, h: int, *, excl: bool = False) -> Iterator[GbfPoly]:
    """The linear code behind :func:`log2_coset_count`, explicitly."""
    q = 1 << h
    top = list(range(m - k, m))
    couplers = list(range(m - k))
    if excl:
        couplers.remove(m - k - 1)
    gi_polys = list(enumerate_f_polys(r - 1, k, h, m=m, variables=top))
    g_polys = list(enumerate_f_polys(r, k, h, m=m, variables=top))
    if (len(couplers) * math.log2(len(gi_polys)) + math.log2(len(g_polys))) > 22:
        raise EnumerationError("coset code too large to enumerate")
    for combo in itertools.product(gi_polys, repeat=len(couplers)):
        base = GbfPoly.zero(q, m)
        for i, gi in zip(couplers, combo):
            base = base + GbfPoly.variable(q, m, i) * gi
        for g in g_polys:
            yield base + g


def _path_reps(m: int, k: int, h: int, r: int) -> Iterator[GbfPoly]:
    """Representatives: one path class per restriction, a junta of the first
    min(r+h-3, k) restricted bits."""
    if m - k < 2:
        raise ValueError("need at least two path vertices")
    if r + h < 3:
        raise ValueError("need r + h >= 3")
    q = 1 << h
    t = min(r + h - 3, k)
    classes = _paths_up_to_reversal(range(m - k))
    prefix_vars = list(range(m - k, m - k + t))
    for assignment in itertools.product(classes, repeat=1 << t):
        f = GbfPoly.zero(q, m)
        for word, path in enumerate(assignment):
            ind = indicator_poly(q, m, Restriction.assign(prefix_vars, word))
            f = f + ind * path_quadratic(q, m, path, q // 2)
        yield f


def _isolated_reps(m: int, k: int, h: int, r: int) -> Iterator[GbfPoly]:
    """Representatives whose every restriction isolates the vertex m-k-1,
    with a balanced linear coupling to the restricted variables."""
    if m - k < 3:
        raise ValueError("need at least three unrestricted variables")
    if r + h < 3:
        raise ValueError("need r + h >= 3")
    q = 1 << h
    half = q // 2
    l1 = m - k - 1
    t = min(r + h - 3, k)
    classes = _paths_up_to_reversal(range(m - k - 1))
    prefix_vars = list(range(m - k, m - k + t))
    for e in range(1, 1 << k):
        coupling = GbfPoly.zero(q, m)
        for j in range(k):
            if (e >> j) & 1:
                coupling = coupling + GbfPoly.monomial(q, m, [l1, m - 1 - j], half)
        for assignment in itertools.product(classes, repeat=1 << t):
            f = coupling
            for word, path in enumerate(assignment):
                ind = indicator_poly(q, m, Restriction.assign(prefix_vars, word))
                f = f + ind * path_quadratic(q, m, path, half)
            yield f


def _multi_isolated_reps(m: int, k: int, h: int, r: int, sizes: Sequence[int]) -> Iterator[GbfPoly]:
    """Representatives with p >= 2 isolated vertices: restriction words are
    split into lexicographic blocks of the given sizes, block a isolating
    vertex m-k-1-a, with min(2^{r+h-3}, N_a) free path choices per block."""
    sizes = tuple(int(n) for n in sizes)
    if len(sizes) < 2 or sum(sizes) != 1 << k or any(n < 1 for n in sizes):
        raise ValueError("block sizes must be >= 1, at least two blocks, summing to 2^k")
    if m - k < 3 or len(sizes) > m - k:
        raise ValueError("not enough unrestricted vertices")
    if r + h < 3:
        raise ValueError("need r + h >= 3")
    q = 1 << h
    half = q // 2
    restricted = list(range(m - k, m))
    free = 1 << (r + h - 3)
    blocks: list[tuple[int, list[int], int]] = []  # (isolated vertex, words, free choices)
    at = 0
    for a, n in enumerate(sizes):
        blocks.append((m - k - 1 - a, list(range(at, at + n)), min(free, n)))
        at += n
    choice_spaces = []
    for l, _, j in blocks:
        classes = _paths_up_to_reversal([v for v in range(m - k) if v != l])
        choice_spaces.append(list(itertools.product(classes, repeat=j)))
    for picks in itertools.product(*choice_spaces):
        f = GbfPoly.zero(q, m)
        for (l, words, j), paths in zip(blocks, picks):
            for rank, word in enumerate(words):
                ind = indicator_poly(q, m, Restriction.assign(restricted, word))
                f = f + ind * path_quadratic(q, m, paths[min(rank, j - 1)], half)
        yield f


def _union_codebook(parts: Sequence[tuple[Iterator[GbfPoly], Iterator[GbfPoly]]]) -> Iterator[GbfPoly]:
    """Union of rep + linear-code sums, deduplicated by value vector."""
    seen: set[bytes] = set()
    for reps, code in parts:
        code_list = list(code)
        for rep in reps:
            for g in code_list:
                f = rep + g
                key = f.value_vector().astype(np.int8).tobytes()
                if key not in seen:
                    seen.add(key)
                    yield f


def enumerate_codebook(
    family: str,
    m: int,
    h: int,
    *,
    r: int | None = None,
    k: int | None = None,
    sizes: Sequence[int] = (),
) -> Iterator[GbfPoly]:
    """Generate the polynomials of a named codebook family.

    Families: ``ERM`` (all effective degree <= r), ``A``/``A1`` (linear coset
    codes, with/without the designated coupling), ``R``/``R1``/``R2``
    (path / single-isolated / multi-isolated representatives), ``C4``/``C8``
    (the PMEPR-4 and PMEPR-8 union codes), ``GOLAY`` (standard path
    polynomials).  Raises :class:`EnumerationError` when the request exceeds
    2^22 words.
    """
    fam = family.upper()
    if fam == "GOLAY":
        return standard_golay_gbfs(m, h)
    if r is None:
        raise ValueError(f"family {family!r} needs r")
    if fam == "ERM":
        return enumerate_f_polys(r, m, h)
    if fam in ("A", "A1"):
        if k is None:
            raise ValueError(f"family {family!r} needs k")
        return _coset_polys(m, k, r, h, excl=fam == "A1")
    if fam == "R":
        if k is None:
            raise ValueError("family 'R' needs k")
        return _path_reps(m, k, h, r)
    if fam == "R1":
        if k is None:
            raise ValueError("family 'R1' needs k")
        return _isolated_reps(m, k, h, r)
    if fam == "R2":
        if k is None:
            raise ValueError("family 'R2' needs k")
        return _multi_isolated_reps(m, k, h, r, sizes)
    if fam == "C4":
        rp = min(r, 2)
        return _union_codebook(
            [
                (_path_reps(m, 1, h, r), _coset_polys(m, 1, rp, h)),
                (_isolated_reps(m, 1, h, r), _coset_polys(m, 1, rp, h, excl=True)),
            ]
        )
    if fam == "C8":
        rpp = min(r, 3)
        parts = [
            (_path_reps(m, 2, h, r), _coset_polys(m, 2, rpp, h)),
            (_isolated_reps(m, 2, h, r), _coset_polys(m, 2, rpp, h, excl=True)),
        ]
        if (h == 1 and 2 <= r <= 3) or (h > 1 and 1 <= r <= 2):
            rp = min(r, 2)
            parts.append((_multi_isolated_reps(m, 1, h, r, (1, 1)), _coset_polys(m, 1, rp, h)))
        return _union_codebook(parts)
    raise ValueError(f"unknown family {family!r}")


def codeword_matrix(polys: Iterator[GbfPoly] | Sequence[GbfPoly]) -> np.ndarray:
    """Stack value vectors into a (n, 2^m) integer matrix."""
    rows = [f.value_vector() for f in polys]
    if not rows:
        raise ValueError("no codewords")
    return np.stack(rows)


# -- printed reference tables ----------------------------------------------------

# Each fixture keeps the original spelling of the printed rates; tolerance is
# derived from the number of printed decimals (5e-5 for four decimals).  The
# reference columns of the PMEPR-4/6/8 family tables are printed-only values
# from cited prior work and have no formula here.

TABLE_RATE4 = [
    # (m, q, printed proposed rate, printed reference rate)
    (5, 2, "0.4346", "0.3440"),
    (6, 2, "0.3274", "0.2660"),
    (7, 2, "0.2202", "0.1800"),
    (8, 2, "0.1398", "0.1130"),
    (9, 2, "0.0855", "0.0660"),
    (10, 2, "0.0509", "0.0380"),
    (5, 4, "0.7524", "0.3750"),
    (6, 4, "0.5175", "0.2420"),
    (7, 4, "0.3309", "0.1480"),
    (8, 4, "0.2030", "0.0880"),
    (9, 4, "0.1210", "0.0510"),
    (10, 4, "0.0706", "0.0290"),
]

TABLE_RATE6 = [
    (4, 2, "0.7442"),
    (5, 2, "0.5384"),
    (6, 2, "0.3721"),
    (7, 2, "0.2440"),
    (8, 2, "0.1528"),
    (9, 2, "0.0925"),
    (10, 2, "0.0546"),
    (4, 4, "1.3173"),
    (5, 4, "0.8875"),
    (6, 4, "0.5779"),
    (7, 4, "0.3625"),
    (8, 4, "0.2199"),
    (9, 4, "0.1299"),
    (10, 4, "0.0753"),
]

TABLE_RATE8 = [
    (7, 2, "0.2371", "0.1720"),
    (8, 2, "0.1501", "0.1170"),
    (9, 2, "0.0916", "0.072"),
    (10, 2, "0.0544", "0.043"),
]

TABLE_UNION4 = [
    # (m, h, r, printed proposed, printed comparison, printed d_L, printed d_E^2)
    (4, 1, 2, "0.6060", "0.5990", 4, "16.00"),
    (4, 1, 3, "0.7010", "0.6980", 2, "8.00"),
    (4, 2, 1, "0.9150", "0.9120", 8, "16.00"),
    (4, 2, 2, "1.2000", "1.1980", 4, "8.00"),
    (5, 1, 2, "0.4270", "0.4250", 8, "32.00"),
    (5, 1, 3, "0.5373", "0.5366", 4, "16.00"),
    (5, 2, 1, "0.6134", "0.6120", 16, "32.00"),
    (5, 2, 2, "0.8492", "0.8491", 8, "16.00"),
    (6, 1, 2, "0.2809", "0.2798", 16, "64.00"),
    (6, 1, 3, "0.3723", "0.3721", 8, "32.00"),
    (6, 2, 1, "0.3897", "0.3892", 32, "64.00"),
    (6, 2, 2, "0.5596", "0.5596", 16, "32.00"),
]

TABLE_UNION8 = [
    (5, 1, 2, "0.4741", "0.4558", 8, "32.00"),
    (5, 1, 3, "0.6007", "0.5991", 4, "16.00"),
    (5, 1, 4, "0.6982", "0.6981", 2, "8.00"),
    (5, 2, 1, "0.6596", "0.6432", 16, "32.00"),
    (5, 2, 2, "1.006", "1.005", 8, "16.00"),
    (5, 2, 3, "1.1981", "1.1981", 4, "8.00"),
    (6, 1, 2, "0.3198", "0.3060", 16, "64.00"),
    (6, 1, 3, "0.4249", "0.4245", 8, "32.00"),
    (6, 1, 4, "0.5366", "0.5366", 4, "16.00"),
    (6, 2, 1, "0.4286", "0.4154", 32, "64.00"),
    (6, 2, 2, "0.6746", "0.6745", 16, "32.00"),
    (6, 2, 3, "0.8491", "0.8491", 8, "16.00"),
]

TABLE_BOUNDS = [
    # (k, construction, M, p, printed proposed bound, printed comparison bound)
    (1, "balanced", 0, 1, 4, "8"),
    (1, "doubled", 0, 1, 8, "8"),
    (1, "doubled", 0, 2, 8, ">=16"),
    (1, "doubled", 1, 1, 6, ">=8"),
    (1, "doubled", 2, 0, 4, "4"),
    (2, "balanced", 0, 1, 8, "16"),
    (2, "balanced", 0, 2, 8, ">=32"),
    (2, "balanced", 1, 1, 8, ">=16"),
    (2, "doubled", 0, 1, 16, "16"),
    (2, "doubled", 0, 2, 16, ">=32"),
    (2, "doubled", 0, 3, 16, ">=64"),
    (2, "doubled", 0, 4, 16, ">=128"),
    (2, "doubled", 1, 1, 14, ">=16"),
    (2, "doubled", 1, 2, 14, ">=32"),
    (2, "doubled", 1, 3, 14, ">=128"),
    (2, "doubled", 2, 1, 12, ">=16"),
    (2, "doubled", 2, 2, 12, ">=32"),
    (2, "doubled", 3, 1, 10, ">=16"),
    (2, "doubled", 4, 0, 8, "8"),
]


# Printed entries that the stated formulas provably do not reproduce.  They
# are kept verbatim in the fixtures and reported as failures; this registry
# names them so tests can mark them expected and the CLI can annotate them.
KNOWN_DISCREPANCIES: dict[tuple[str, tuple, str], str] = {
    ("rate8", (7, 2), "proposed"): "size formula gives rate 0.227791; no variant of the printed formula reproduces 0.2371",
    ("rate8", (8, 2), "proposed"): "size formula gives rate 0.145659",
    ("rate8", (9, 2), "proposed"): "size formula gives rate 0.089591",
    ("rate8", (10, 2), "proposed"): "size formula gives rate 0.053588",
    ("union4", (4, 1, 2), "proposed"): "formula gives 0.606277 (diff 2.8e-4)",
    ("union4", (4, 1, 2), "comparison"): "formula gives 0.599060, which rounds to 0.5991, not the printed 0.5990",
    ("union4", (4, 1, 3), "proposed"): "formula gives 0.700591 (diff 4.1e-4)",
    ("union4", (4, 1, 3), "comparison"): "formula gives 0.698115 (diff 1.2e-4)",
    ("union4", (4, 2, 1), "proposed"): "formula gives 0.915241 (diff 2.4e-4)",
    ("union4", (4, 2, 1), "comparison"): "formula gives 0.911560 (diff 4.4e-4)",
    ("union4", (4, 2, 2), "proposed"): "formula gives 1.198744 (diff 1.3e-3)",
    ("union4", (4, 2, 2), "comparison"): "formula gives 1.198115 (diff 1.2e-4)",
    ("union4", (5, 1, 2), "proposed"): "formula gives 0.427263 (diff 2.6e-4)",
    ("union4", (5, 1, 2), "comparison"): "formula gives 0.424530 (diff 4.7e-4)",
    ("union8", (5, 2, 1), "comparison"): "formula gives 0.643280; the printed 0.6432 is a truncation, not a rounding",
}


def _printed_tolerance(text: str) -> float:
    """Half a unit in the last printed decimal place, floored at 5e-5.

    Four-decimal entries therefore get the strict 5e-5; the handful of
    entries printed to three decimals cannot be pinned tighter than their own
    rounding.
    """
    decimals = len(text.split(".")[1]) if "." in text else 0
    return max(5e-5, 0.5 * 10.0**-decimals)


@dataclass(frozen=True)
class GoldenEntry:
    table: str
    key: tuple
    column: str
    computed: float | int | None
    printed: str
    ok: bool | None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "table": self.table,
            "key": list(self.key),
            "column": self.column,
            "computed": self.computed,
            "printed": self.printed,
            "ok": self.ok,
            "note": self.note,
        }


def _check(table: str, key: tuple, column: str, computed: float, printed: str, out: list[GoldenEntry]) -> None:
    tol = _printed_tolerance(printed)
    ok = abs(computed - float(printed)) <= tol
    note = "" if ok else f"|computed - printed| = {abs(computed - float(printed)):.2e} > {tol:.0e}"
    out.append(GoldenEntry(table, key, column, round(computed, 6), printed, ok, note))


def golden_report() -> list[GoldenEntry]:
    """Confront every printed table entry with the closed forms.

    Entries whose printed reference has no formula here are reported with
    ``ok=None``.  Discrepant entries are genuine and enumerated in
    :data:`KNOWN_DISCREPANCIES`: the printed PMEPR-8 family rates do not
    follow from the stated size formula, the m=4 rows (and the m=5, h=1, r=2
    row) of the PMEPR-4 union table disagree with the formulas in both
    columns, and one comparison entry was truncated rather than rounded.
    These stay red in the report on purpose.
    """
    out: list[GoldenEntry] = []
    for m, q, prop, ref in TABLE_RATE4:
        _check("rate4", (m, q), "proposed", rate(family_size(m, q, 4), m), prop, out)
        out.append(GoldenEntry("rate4", (m, q), "reference", None, ref, None, "printed-only comparison"))
    for m, q, prop in TABLE_RATE6:
        _check("rate6", (m, q), "proposed", rate(family_size(m, q, 6), m), prop, out)
    for m, q, prop, ref in TABLE_RATE8:
        _check("rate8", (m, q), "proposed", rate(family_size(m, q, 8), m), prop, out)
        out.append(GoldenEntry("rate8", (m, q), "reference", None, ref, None, "printed-only comparison"))
    for m, h, r, prop, ref, d_lee, d_euc in TABLE_UNION4:
        _check("union4", (m, h, r), "proposed", rate(union_code_size_pmepr4(m, r, h), m), prop, out)
        _check("union4", (m, h, r), "comparison", rate(coset_code_size(m, 1, r, h), m), ref, out)
        fl, fe = erm_distance_formulas(r, m, h)
        out.append(GoldenEntry("union4", (m, h, r), "d_L", fl, str(d_lee), fl == d_lee))
        out.append(GoldenEntry("union4", (m, h, r), "d_E2", fe, d_euc, abs(fe - float(d_euc)) < 5e-3))
    for m, h, r, prop, ref, d_lee, d_euc in TABLE_UNION8:
        _check("union8", (m, h, r), "proposed", rate(union_code_size_pmepr8(m, r, h), m), prop, out)
        _check("union8", (m, h, r), "comparison", rate(coset_code_size(m, 2, r, h), m), ref, out)
        fl, fe = erm_distance_formulas(r, m, h)
        out.append(GoldenEntry("union8", (m, h, r), "d_L", fl, str(d_lee), fl == d_lee))
        out.append(GoldenEntry("union8", (m, h, r), "d_E2", fe, d_euc, abs(fe - float(d_euc)) < 5e-3))
    for k, kind, bigm, p, prop, ref in TABLE_BOUNDS:
        formula = (1 << (k + 1)) if kind == "balanced" else (1 << (k + 2)) - 2 * bigm
        out.append(
            GoldenEntry("bounds", (k, kind, bigm, p), "proposed", formula, str(prop), formula == prop)
        )
        cmp_formula = 1 << (k + p + 1)
        printed_val = int(ref.lstrip(">="))
        ok = printed_val >= cmp_formula if ref.startswith(">=") else printed_val == cmp_formula
        note = "" if ok else f"comparison formula gives {cmp_formula}"
        out.append(GoldenEntry("bounds", (k, kind, bigm, p), "comparison", cmp_formula, ref, ok, note))
    return out


# -- rate-table rows for export ---------------------------------------------------


def rate_rows() -> list[dict]:
    """Computed codebook rates as flat records (for the CSV export).

    ``rate_reference`` carries the printed value from the corresponding
    table entry when one exists.
    """
    rows: list[dict] = []
    for m, q, prop, ref in TABLE_RATE4:
        size = family_size(m, q, 4)
        rows.append(
            dict(family="S1", m=m, q_or_h=q, r="", log2_size=round(math.log2(size), 6),
                 rate=round(rate(size, m), 6), rate_reference=prop, d_L="", d_E2="")
        )
    for m, q, prop in TABLE_RATE6:
        size = family_size(m, q, 6)
        rows.append(
            dict(family="S2", m=m, q_or_h=q, r="", log2_size=round(math.log2(size), 6),
                 rate=round(rate(size, m), 6), rate_reference=prop, d_L="", d_E2="")
        )
    for m, q, prop, ref in TABLE_RATE8:
        size = family_size(m, q, 8)
        rows.append(
            dict(family="S3", m=m, q_or_h=q, r="", log2_size=round(math.log2(size), 6),
                 rate=round(rate(size, m), 6), rate_reference=prop, d_L="", d_E2="")
        )
    for m, h, r, prop, ref, d_lee, d_euc in TABLE_UNION4:
        size = union_code_size_pmepr4(m, r, h)
        fl, fe = erm_distance_formulas(r, m, h)
        rows.append(
            dict(family="C4", m=m, q_or_h=h, r=r, log2_size=round(math.log2(size), 6),
                 rate=round(rate(size, m), 6), rate_reference=prop, d_L=fl, d_E2=round(fe, 2))
        )
        csize = coset_code_size(m, 1, r, h)
        rows.append(
            dict(family="COSET-K1", m=m, q_or_h=h, r=r, log2_size=round(math.log2(csize), 6),
                 rate=round(rate(csize, m), 6), rate_reference=ref, d_L=fl, d_E2=round(fe, 2))
        )
    for m, h, r, prop, ref, d_lee, d_euc in TABLE_UNION8:
        size = union_code_size_pmepr8(m, r, h)
        fl, fe = erm_distance_formulas(r, m, h)
        rows.append(
            dict(family="C8", m=m, q_or_h=h, r=r, log2_size=round(math.log2(size), 6),
                 rate=round(rate(size, m), 6), rate_reference=prop, d_L=fl, d_E2=round(fe, 2))
        )
        csize = coset_code_size(m, 2, r, h)
        rows.append(
            dict(family="COSET-K2", m=m, q_or_h=h, r=r, log2_size=round(math.log2(csize), 6),
                 rate=round(rate(csize, m), 6), rate_reference=ref, d_L=fl, d_E2=round(fe, 2))
        )
    return rows
