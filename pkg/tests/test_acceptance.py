"""One test group per acceptance criterion; the terminal summary prints a
PASS/FAIL line per criterion. Tolerance everywhere is exact equality."""
import math
import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from meshpat import checks, multivar as mv, recursions as rc, tables
from meshpat.oracle import ONE_BEFORE_N, PermClass, distribution, distributions, gamma_block, q_distribution
from meshpat.perm_core import (KMax, Permutation, QuadSpec, complement, insert_bottom, inverse,
                               mmp_count, reverse)
from meshpat.poly import IntPoly, egf_shift_embed

S = QuadSpec.of
N1 = PermClass.parse("block:n1")


def hard_failures(records):
    return [(r["check"], r["n"], r["got"], r["expected"]) for r in records if r["status"] == "fail"]


# ---------------------------------------------------------------- AC1

@pytest.mark.criterion("AC1")
def test_ac1_golden_tables():
    t0 = time.time()
    for spec, rows in tables.GOLDEN.items():
        for n in rows:
            got = distribution(n, QuadSpec.parse(spec))
            if (spec, n) in tables.TYPOS:
                continue
            assert got == tables.golden(spec, n), (spec, n, str(got))
    assert time.time() - t0 < 60


@pytest.mark.criterion("AC1")
def test_ac1_documented_typos_against_oracle():
    got = distribution(6, S(1, 0, 1, 0))
    printed = tables.golden("1,0,1,0", 6)
    assert got == IntPoly([132, 232, 220, 112, 24])
    # only the exponent of the last term differs; (n-2)! x^(n-2) is the top term
    assert got.to_list()[:4] == printed.to_list()[:4] and got.leading_coefficient == printed.leading_coefficient
    assert got.degree == 4 != printed.degree
    for n in (7, 9):
        # garbled display entries, compared under the only reading that fits
        assert distribution(n, S(1, 0, 1, 1), N1) == IntPoly(tables.N1_1011[n])


@pytest.mark.criterion("AC1")
def test_ac1_kmax_series_tables():
    for n in range(1, 10):
        d = dict(zip((2, 3, 4), distributions(n, [KMax(2), KMax(3), KMax(4)])))
        for k in (2, 3, 4):
            if (f"kmax{k}", n) in tables.TYPOS:
                continue
            assert d[k] == tables.kmax_printed(k, n), (k, n)


@pytest.mark.criterion("AC1")
def test_ac1_block_n1_display():
    for n, coeffs in tables.N1_1011.items():
        if ("N1_1011", n) in tables.TYPOS:
            continue
        assert distribution(n, S(1, 0, 1, 1), N1) == IntPoly(coeffs), n


@pytest.mark.criterion("AC1")
@pytest.mark.xfail(strict=True, reason="printed R_9^(3<=max) = 2(100584 + ...) sums to 344880, not 9! = 362880; "
                                       "the oracle, recursion and series all give constant 2*109584")
def test_ac1_kmax3_n9_as_printed():
    got = distribution(9, KMax(3))
    assert got(1) == math.factorial(9)
    assert got == tables.kmax_printed(3, 9)


# ---------------------------------------------------------------- AC2

@pytest.mark.criterion("AC2")
def test_ac2_triple_agreement():
    recs = checks.suite_closed_forms(8)
    assert not hard_failures(recs)
    for fam in ["(4,0,0,0)", "(eq:3,0,0,0)", "(2,2,0,0)", "(3,empty,0,0)", "(4<=max)"]:
        assert any(r["check"].startswith(fam) for r in recs), fam


# ---------------------------------------------------------------- AC3

@pytest.mark.criterion("AC3")
@pytest.mark.parametrize("name", ["f1010", "f1020", "g2020", "f1011", "h1111"])
def test_ac3_multivariate(name):
    eng = mv.engine(name)
    runs = mv.run_engine(eng, 8)
    for M in runs:
        assert M.specialize() == distribution(M.n, eng.specs[0]), M.n
        if M.n <= 7:
            assert M == mv.direct(eng, M.n), M.n


# ---------------------------------------------------------------- AC4

@pytest.mark.criterion("AC4")
def test_ac4_symmetry():
    recs = checks.suite_symmetry(7)
    assert len(recs) == 7 and not hard_failures(recs)
    # 256 specs over {0,1,2,empty} fall into 55 dihedral orbits (Burnside)
    assert "55 orbits" in recs[0]["check"]


# ---------------------------------------------------------------- AC5

@pytest.mark.criterion("AC5")
def test_ac5_q_analogues():
    for n in range(1, 8):
        for k in (1, 2, 3):
            want = q_distribution(n, S(k, 0, 0, 0))
            assert rc.q_r_k000(k, n) == want == rc.q_r_k000_closed(k, n)
            assert want.at_q(1) == rc.r_k000(k, n)
        for a in (1, 2):
            for b in (1, 2):
                want = q_distribution(n, S(a, b, 0, 0))
                assert rc.q_r_ab00(a, b, n) == want == rc.q_r_ab00_closed(a, b, n)
                assert want.at_q(1) == rc.r_ab00(a, b, n)
    assert q_distribution(3, S(1, 1, 0, 0)) != q_distribution(3, S(2, 0, 0, 0))
    assert rc.q_r_ab00(1, 1, 3) != rc.q_r_k000(2, 3)


# ---------------------------------------------------------------- AC6

@pytest.mark.criterion("AC6")
def test_ac6_sequences():
    cat, sch, cb = [], [], []
    for n in range(1, 9):
        d = distributions(n, [S(1, 0, 1, 0), S(1, 0, 2, 0), S(1, 0, 1, 1)])
        cat.append(d[0](0)), sch.append(d[1](0)), cb.append(d[2](0))
    assert cat == [1, 2, 5, 14, 42, 132, 429, 1430]
    assert sch == [1, 2, 6, 22, 90, 394, 1806, 8558]
    assert cb == [math.comb(2 * n - 2, n - 1) for n in range(1, 9)]
    for n in range(1, 9):
        r2, r3 = distribution(n, KMax(2)), distribution(n, KMax(3))
        # A000774 listed from offset 0: a(n-1) = (n-1)!(1 + H_(n-1))
        h = sum(math.factorial(n - 1) // i for i in range(1, n))
        assert r2(0) == math.factorial(n - 1) + h == tables.SEQUENCES["kmax2_at_0"][n - 1]
        if n >= 3:
            assert r2.coefficient(1) == rc.stirling1(n, 3)
        if n >= 4:
            assert r3(0) == 2 * rc.stirling1(n, 2)
    recs = checks.suite_sequences(8)
    assert not hard_failures(recs)
    assert any("(k-1)!(C(n,2)-C(k-1,2))" in r["check"] for r in recs)


@pytest.mark.criterion("AC6")
@pytest.mark.xfail(strict=True, reason="n! + sum n!/i is the OEIS term a(n) with offset 0; R_n(0) equals "
                                       "a(n-1), so the identity as indexed fails for every n (R_1(0)=1, formula 2)")
def test_ac6_a000774_as_indexed():
    for n in range(1, 9):
        formula = math.factorial(n) + sum(math.factorial(n) // i for i in range(1, n + 1))
        assert distribution(n, KMax(2))(0) == formula


# ---------------------------------------------------------------- AC7

@pytest.mark.criterion("AC7")
def test_ac7_restricted_classes():
    for n in range(2, 10):
        d = distributions(n, [S(1, 0, 1, 0), S(1, 0, 1, 1)], ONE_BEFORE_N)
        assert rc.b1010(n) == rc.b1010_closed(n) == d[0]
        assert d[0](0) == 2 ** (n - 2)
        assert d[1] == rc.b1011_closed(n) == rc.b1011(n)
    seq = []
    for n in range(2, 11):
        p = distribution(n, S(1, 0, 1, 1), N1)
        assert p(0) == (1 + 3 ** (n - 2)) // 2
        seq.append(p(0))
        if n <= 9:
            assert p == rc.block_conv(S(0, 0, 1, 0), S(1, 0, 0, 1), 2, n)
            # beta = n, alpha = 1 with (a,0,b,0) = (1,0,1,0)
            assert distribution(n, S(1, 0, 1, 0), N1) == rc.block_conv(S(0, 0, 1, 0), S(1, 0, 0, 0), 2, n)
    assert seq == [1, 2, 5, 14, 41, 122, 365, 1094, 3281]
    recs = checks.suite_bclass(9)
    assert not hard_failures(recs)


# ---------------------------------------------------------------- AC8

@pytest.mark.criterion("AC8")
def test_ac8_series():
    for k in (1, 2, 3):
        emb = egf_shift_embed(rc.p_k000_series(k, 8 - k), k, [distribution(n, S(k, 0, 0, 0)) for n in range(k)])
        assert list(emb.terms) == [distribution(n, S(k, 0, 0, 0)) for n in range(9)]
    for k in (2, 3, 4):
        ser = rc.r_kmax_series(k, 9)
        for n in range(1, 10):
            if (f"kmax{k}", n) not in tables.TYPOS:
                assert ser[n] == tables.kmax_printed(k, n), (k, n)
    rf = rc.r_empty000_series(8)
    for n in range(9):
        assert rf[n] == distribution(n, S("empty", 0, 0, 0))
        assert rf[n].to_list() == ([1] if n == 0 else [rc.stirling1(n, j) for j in range(n + 1)])
    assert not hard_failures(checks.suite_series(9))


# ---------------------------------------------------------------- AC9

@pytest.mark.criterion("AC9")
def test_ac9_soft_reports():
    import json
    report = {"kmax": checks.run_suite("kmax", 9), "sequences": checks.run_suite("sequences", 8)}
    json.dumps(report)
    soft = [r for rep in report.values() for r in rep["records"] if r["soft"]]
    assert all(r["status"] in ("pass", "mismatch") for r in soft)
    kinds = {r["check"].split(":")[0] for r in soft}
    assert "A001712" in kinds
    assert any("square-permutation" in r["check"] for r in soft)
    assert any("(1<=max)" in r["check"] for r in soft)
    # the square-permutation formula as printed misses, the 4(2n-5) reading fits
    sq = {r["check"]: r["status"] for r in soft if "as printed" in r["check"]}
    assert set(sq.values()) == {"mismatch"}
    assert report["sequences"]["ok"] and report["kmax"]["ok"]
    for r in soft:
        print(f"soft {r['check']} n={r['n']}: {r['status']}")


# ---------------------------------------------------------------- AC10

def _triples(count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, 9)
        w = list(range(1, n + 1))
        rng.shuffle(w)
        yield Permutation(tuple(w)), rng.randint(1, n + 1), rng.randint(1, n + 1), rng


@pytest.mark.criterion("AC10")
def test_ac10_insertion_identities():
    for sigma, i, k, _ in _triples(1000, 10):
        n = sigma.n
        assert mmp_count(insert_bottom(sigma, i), S(k, 0, 0, 0)) == \
            mmp_count(sigma, S(k, 0, 0, 0)) + (i <= n + 1 - k)
    for sigma, i, _, rng in _triples(1000, 11):
        n = sigma.n
        a, b = rng.randint(1, 4), rng.randint(1, 4)
        assert mmp_count(insert_bottom(sigma, i), S(a, b, 0, 0)) == \
            mmp_count(sigma, S(a, b, 0, 0)) + (b + 1 <= i <= n - a + 1)


@pytest.mark.criterion("AC10")
@settings(max_examples=200)
@given(st.integers(0, 9).flatmap(lambda n: st.permutations(list(range(1, n + 1)))))
def test_ac10_involutions(w):
    sigma = Permutation(tuple(w))
    for f in (reverse, complement, inverse):
        assert f(f(sigma)) == sigma


@pytest.mark.criterion("AC10")
def test_ac10_mass():
    for n in range(0, 9):
        for p in distributions(n, [S(1, 0, 1, 0), S("empty", 2, 0, "eq:1"), KMax(2)]):
            assert p(1) == math.factorial(n)
    for name in ("f1010", "g2020", "f1011", "h1111"):
        for M in mv.run_engine(mv.engine(name), 8):
            assert M.mass() == math.factorial(M.n)


@pytest.mark.criterion("AC10")
def test_ac10_determinism_under_partitions():
    pats = [S(1, 0, 1, 0), S(1, 1, 1, 1), KMax(3)]
    base = distributions(9, pats)
    for parts, workers in ((2, 2), (9, 4), (64, 8)):
        assert distributions(9, pats, partitions=parts, workers=workers) == base
    assert distributions(9, pats, N1, partitions=5, workers=3) == distributions(9, pats, N1)
