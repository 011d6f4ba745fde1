"""The acceptance gate: one numbered criterion per test group, timed.

Each test carries an ``acceptance(num=…, desc=…)`` marker; the conftest
prints a one-line PASS/FAIL verdict per criterion after the run.  Checks
that pin a printed reference value known to be wrong are strict-xfail
companions — they document the misprint without weakening the gate (see
the golden-report registry in :mod:`cskit.codebook`).
"""

import itertools
import time

import numpy as np
import pytest

from cskit import (
    GbfPoly,
    GraphShapeError,
    analyze,
    balanced_cs,
    doubled_cs,
    golay_pair,
    is_cs,
    offset_set,
    parse_gbf,
    pmepr,
    psi,
    random_qualifying_gbf,
    set_aacf,
    standard_golay_gbfs,
)
from cskit.codebook import (
    KNOWN_DISCREPANCIES,
    erm_distance_formulas,
    erm_min_distances,
    family_size,
    golden_report,
    rate,
    union_code_size_pmepr4,
    union_code_size_pmepr8,
)
from cskit.cyclo import CycloValue

# the four pinned reference polynomials exercised by the fixtures below
FIXTURE_A = "q=2;m=4; x0*x1*x3 + x0*x2*x3 + x0*x1*x2 + x1*x2"
FIXTURE_B = (
    "q=4;m=5; 2*x0*x1*x2 + 2*x0*x1*x3 + 2*x1*x3 + 2*x2*x3 + 2*x0*x4"
    " + x1 + 2*x2 + 2*x3 + 2*x4 + 3"
)
FIXTURE_C = "q=4;m=5; x0*x1*x3 + x0*x3*x4 + x1*x3 + x2*x3"
FIXTURE_D = (
    "q=4;m=6; 2*x0*x2*x3 + 2*x0*x3*x4 + 2*x0*x4*x5 + 2*x0*x2*x4 + 2*x0*x1*x4"
    " + 2*x0*x1*x3 + 2*x0*x3*x5 + 2*x2*x4 + 2*x1*x4 + 2*x1*x3 + 2*x3*x5"
)

FIXTURE_A_MATRIX = [
    "++++++-++++-+--+",
    "+-+-+---+-++++--",
    "++++--+-+++--++-",
    "+-+--++++-++--++",
]


class Timer:
    def __init__(self, limit: float):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, limit {self.limit}s"


# -- criterion 1 ---------------------------------------------------------------


@pytest.mark.acceptance(num=1, desc="frozen 4x16 fixture matrix and its exact summed autocorrelation")
def test_criterion_1_matrix_and_exact_aacf():
    with Timer(1.0):
        f = parse_gbf(FIXTURE_A)
        x0 = GbfPoly.variable(2, 4, 0)
        x2 = GbfPoly.variable(2, 4, 2)
        cand = offset_set(f, restricted=[0])
        # row order: offset words lexicographic in (outer bit, inner word)
        assert cand.members == (f, f + x0, f + x2, f + x0 + x2)
        rows = ["".join("+-"[p] for p in s.phases) for s in cand.sequences()]
        assert rows == FIXTURE_A_MATRIX
        vec = set_aacf(cand.sequences())
        assert vec.peak == CycloValue.from_int(2, 64)
        sixteen = CycloValue.from_int(2, 16)
        assert vec.at(8) == sixteen and vec.at(-8) == sixteen
        assert vec.nonzero_shifts() == [8]
        assert cand.predicted.values == vec.values


@pytest.mark.acceptance(num=1, desc="frozen 4x16 fixture matrix and its exact summed autocorrelation")
@pytest.mark.xfail(
    strict=True,
    reason="the printed off-peak shift is +-2, but the isolated vertex is x3, "
    "so the residual sits at +-2^3 = +-8; the +-2 is a misprint",
)
def test_criterion_1_offpeak_shift_as_printed():
    f = parse_gbf(FIXTURE_A)
    vec = set_aacf(offset_set(f, restricted=[0]).sequences())
    assert vec.at(2) == CycloValue.from_int(2, 16)
    assert vec.nonzero_shifts() == [2]


# -- criterion 2 ---------------------------------------------------------------

# every achievable split of the 2^k restrictions into path words (M) and
# isolated groups (N_i); an isolated group needs m - k >= 3 variables
SHAPE_MIXES = {
    0: [(), (1,)],
    1: [(), (1,), (2,)],
    2: [(), (1,), (2,), (3,), (4,), (1, 1), (2, 1), (2, 2), (3, 1), (1, 1, 1), (2, 1, 1)],
}


@pytest.mark.acceptance(num=2, desc="predicted summed autocorrelation equals brute force on 210 random instances")
def test_criterion_2_prediction_oracle():
    with Timer(120.0):
        checked = 0
        shapes_seen = set()
        counters = {0: 0, 1: 0, 2: 0}
        for m, k, q in itertools.product(range(4, 9), range(3), (2, 4)):
            for seed in range(7):
                if m - k >= 3:
                    mixes = SHAPE_MIXES[k]
                    sizes = mixes[counters[k] % len(mixes)]
                    counters[k] += 1
                else:
                    sizes = ()
                f, restricted = random_qualifying_gbf(
                    m, k, q, group_sizes=sizes, balanced=False, seed=1000 * m + 100 * k + 10 * q + seed
                )
                cand = offset_set(f, restricted=restricted)
                measured = set_aacf(cand.sequences())
                assert measured.values == cand.predicted.values
                shapes_seen.add((k, cand.profile.M, tuple(sorted(cand.profile.group_sizes))))
                checked += 1
        assert checked == 210
        # every requested (M, N_i) mix for every k actually showed up
        for k, mixes in SHAPE_MIXES.items():
            for sizes in mixes:
                want = (k, (1 << k) - sum(sizes), tuple(sorted(sizes)))
                assert want in shapes_seen, f"missing shape mix {want}"


# -- criterion 3 ---------------------------------------------------------------


@pytest.mark.acceptance(num=3, desc="balanced construction: exact complementarity and PMEPR <= 2^(k+1) on 100 instances")
def test_criterion_3_balanced():
    with Timer(120.0):
        checked = 0
        combos = []
        for m in range(4, 9):
            for q in (2, 4):
                combos.append((m, 1, q, (2,)))        # balance needs even group sizes
                if m >= 5:
                    combos.append((m, 2, q, (2,)))
                    combos.append((m, 2, q, (4,)))
                if m >= 6:
                    combos.append((m, 2, q, (2, 2)))
        for m, k, q, sizes in combos:
            for seed in range(4):
                f, restricted = random_qualifying_gbf(
                    m, k, q, group_sizes=sizes, balanced=True, seed=7000 + 13 * checked + seed
                )
                cand = balanced_cs(f, restricted=restricted)
                assert is_cs(cand.sequences())
                limit = float(1 << (k + 1))
                assert cand.pmepr_bound == limit
                assert max(pmepr(s) for s in cand.sequences()) <= limit + 1e-6
                checked += 1
        assert checked == 128


# -- criterion 4 ---------------------------------------------------------------


@pytest.mark.acceptance(num=4, desc="doubled construction: exact complementarity and PMEPR <= 2^(k+2)-2M on 100+ instances")
def test_criterion_4_doubled():
    # instances with at least one isolated group: with none, the second half
    # of the doubled family repeats the first and the union is a multiset
    with Timer(120.0):
        checked = 0
        combos = []
        for m in range(4, 9):
            for q in (2, 4):
                combos.append((m, 0, q, (1,)))
                combos.append((m, 1, q, (1,)))
                combos.append((m, 1, q, (2,)))
                if m >= 5:
                    combos.append((m, 2, q, (2,)))
                    combos.append((m, 2, q, (2, 1)))
                    combos.append((m, 2, q, (4,)))
        for m, k, q, sizes in combos:
            for seed in range(2):
                f, restricted = random_qualifying_gbf(
                    m, k, q, group_sizes=sizes, balanced=False, seed=40_000 + 17 * checked
                )
                cand = doubled_cs(f, restricted=restricted)
                assert cand.size == 1 << (k + 2)
                seqs = cand.sequences()
                assert len({bytes(s.phases) for s in seqs}) == cand.size
                assert is_cs(seqs)
                limit = float((1 << (k + 2)) - 2 * cand.profile.M)
                assert cand.pmepr_bound == limit
                assert max(pmepr(s) for s in seqs) <= limit + 1e-6
                checked += 1
        assert checked == 108


@pytest.mark.acceptance(num=4, desc="doubled construction: exact complementarity and PMEPR <= 2^(k+2)-2M on 100+ instances")
def test_criterion_4_pinned_fixtures():
    with Timer(30.0):
        # six-variable fixture: doubled set of size 8 with bound 2^3 - 2*1 = 6
        fd = parse_gbf(FIXTURE_D)
        cand = doubled_cs(fd, restricted=[0])
        assert cand.size == 8 and cand.pmepr_bound == 6.0
        assert is_cs(cand.sequences())
        assert max(pmepr(s) for s in cand.sequences()) <= 6.0 + 1e-6

        # five-variable fixture: balanced set of size 4 with bound 4
        fb = parse_gbf(FIXTURE_B)
        cand = balanced_cs(fb, restricted=[0])
        assert cand.size == 4 and cand.pmepr_bound == 4.0
        assert is_cs(cand.sequences())
        assert max(pmepr(s) for s in cand.sequences()) <= 4.0 + 1e-6

        # the published offset spellings use the other path endpoint; both work
        x = lambda i, f: GbfPoly.variable(f.q, f.m, i)
        alt_b = [fb + 2 * d0 * x(0, fb) + 2 * d * x(1, fb) for d0 in (0, 1) for d in (0, 1)]
        assert is_cs([psi(g) for g in alt_b])
        alt_d = [
            fd + 2 * d0 * x(0, fd) + 2 * dp * x(1, fd) + 2 * d * x(2, fd)
            for d0 in (0, 1) for dp in (0, 1) for d in (0, 1)
        ]
        assert is_cs([psi(g) for g in alt_d])


# -- criterion 5 ---------------------------------------------------------------


@pytest.mark.acceptance(num=5, desc="standard 768-codeword family: PMEPR <= 2 and exact pairing")
def test_criterion_5_standard_codebook():
    with Timer(30.0):
        polys = list(standard_golay_gbfs(3, 2))
        seqs = {bytes(psi(f).phases) for f in polys}
        assert len(polys) == 768 and len(seqs) == 768
        for f in polys:
            assert pmepr(psi(f)) <= 2.0 + 1e-6
            a, b = golay_pair(f)
            assert is_cs([psi(a), psi(b)])


# -- criterion 6 ---------------------------------------------------------------


@pytest.mark.acceptance(num=6, desc="codebook-rate tables reproduced within half-ulp of print")
def test_criterion_6_tables():
    with Timer(5.0):
        entries = golden_report()
        unexpected = [
            e for e in entries
            if e.ok is False and (e.table, e.key, e.column) not in KNOWN_DISCREPANCIES
        ]
        assert unexpected == []
        # named anchors, all within +-5e-5 of print
        assert rate(family_size(5, 2, 4), 5) == pytest.approx(0.4346, abs=5e-5)
        assert rate(family_size(6, 4, 4), 6) == pytest.approx(0.5175, abs=5e-5)
        assert rate(union_code_size_pmepr8(5, 2, 1), 5) == pytest.approx(0.4741, abs=5e-5)
        d_lee, d_euc = erm_distance_formulas(2, 4, 1)
        assert d_lee == 4 and d_euc == pytest.approx(16.00, abs=5e-5)


@pytest.mark.acceptance(num=6, desc="codebook-rate tables reproduced within half-ulp of print")
@pytest.mark.xfail(
    strict=True,
    reason="the stated size formula for the two-restriction family gives rate "
    "0.227791 at (m=7, binary); no variant reproduces the printed 0.2371",
)
def test_criterion_6_two_restriction_rate_as_printed():
    assert rate(family_size(7, 2, 8), 7) == pytest.approx(0.2371, abs=5e-5)


@pytest.mark.acceptance(num=6, desc="codebook-rate tables reproduced within half-ulp of print")
@pytest.mark.xfail(
    strict=True,
    reason="the union-code size formula gives rate 0.606277 at (m=4, h=1, r=2); "
    "the printed 0.6060 differs by 2.8e-4, beyond half an ulp",
)
def test_criterion_6_union_rate_as_printed():
    assert rate(union_code_size_pmepr4(4, 2, 1), 4) == pytest.approx(0.6060, abs=5e-5)


# -- criterion 7 ---------------------------------------------------------------


@pytest.mark.acceptance(num=7, desc="exhaustive minimum distances match the closed forms")
def test_criterion_7_min_distances():
    with Timer(60.0):
        for m in range(1, 5):
            for h in (1, 2):
                for r in range(0, m + 1):
                    got_lee, got_euc = erm_min_distances(r, m, h)
                    want_lee, want_euc = erm_distance_formulas(r, m, h)
                    assert got_lee == want_lee, (r, m, h)
                    assert got_euc == pytest.approx(want_euc, abs=1e-9), (r, m, h)


# -- criterion 8 ---------------------------------------------------------------


@pytest.mark.acceptance(num=8, desc="disputed size-8 claim adjudicated by brute force")
def test_criterion_8_disputed_claim_verdict(capsys):
    with Timer(30.0):
        f = parse_gbf(FIXTURE_C)
        x = lambda i: GbfPoly.variable(4, 5, i)
        claimed = [
            f + 2 * d0 * x(0) + 2 * dp * (x(1) + x(4)) + 2 * d * x(1)
            for d0 in (0, 1) for dp in (0, 1) for d in (0, 1)
        ]
        assert len({g.terms for g in claimed}) == 8
        vec = set_aacf([psi(g) for g in claimed])
        verdict = "PASS" if vec.offpeak_is_zero() else "FAIL"

        # brute force says: not a complementary set (pinned nonzero shifts)
        assert verdict == "FAIL"
        assert vec.nonzero_shifts() == [4, 8, 12]
        assert vec.at(4) == CycloValue(4, (80, 80))
        assert vec.at(8) == CycloValue(4, (0, 32))
        assert vec.at(12) == CycloValue(4, (-16, 16))
        # consistently, the unit-weight couplings break the analyzer's edge rule
        with pytest.raises(GraphShapeError):
            analyze(f, [0])
        # and the single-sequence envelope already exceeds the claimed bound 8
        assert pmepr(psi(f)) > 8.0

        # doubling every coefficient repairs the claim exactly as the
        # surrounding construction predicts: a true size-8 set, bound 8
        repaired = [
            2 * f + 2 * d0 * x(0) + 2 * dp * (x(1) + x(4)) + 2 * d * x(1)
            for d0 in (0, 1) for dp in (0, 1) for d in (0, 1)
        ]
        assert is_cs([psi(g) for g in repaired])
        cand = doubled_cs(2 * f, restricted=[0])
        assert cand.pmepr_bound == 8.0 and is_cs(cand.sequences())
        assert max(pmepr(s) for s in cand.sequences()) == pytest.approx(8.0, abs=1e-9)

        with capsys.disabled():
            print(
                "\n[criterion 8 verdict] size-8 claim as printed: FAIL "
                "(summed autocorrelation is nonzero at shifts 4, 8, 12; "
                "doubling every coefficient yields a true size-8 set with PMEPR bound 8)"
            )


# -- criterion 9 ---------------------------------------------------------------


@pytest.mark.acceptance(num=9, desc="four randomized invariant suites at 1000 cases each")
def test_criterion_9_property_suites():
    import test_properties as props

    with Timer(120.0):
        props.CASES.clear()
        props.test_cross_corr_decomposes_over_restrictions()
        props.test_aacf_matches_float_oracle_and_symmetry()
        props.test_restrictions_partition_the_sequence()
        props.test_pmepr_sandwich_and_refinement()
        for suite in ("decomposition", "oracle", "partition", "sandwich"):
            assert props.CASES[suite] >= 1000, suite
