import math

import pytest

from meshpat import multivar as mv
from meshpat.errors import InvalidInputError
from meshpat.oracle import distribution
from meshpat.poly import IntPoly

ENGINE_NAMES = ["f1010", "f1020", "f1030", "g2020", "f1011", "h1111"]


@pytest.fixture(scope="module")
def runs():
    return {name: mv.run_engine(mv.engine(name), 8) for name in ENGINE_NAMES}


def test_specialize_single_monomial():
    # positions 4 and 6 in family x, position 5 in family y
    M = mv.MultiPoly(("x", "y"), 6, 2, 6, {(1 << 4 | 1 << 6, 1 << 5): 1})
    assert mv.specialize(M, {"x": "x", "y": "1"}) == IntPoly([0, 0, 1])
    assert mv.specialize(M, {"x": "x", "y": "x"}) == IntPoly.monomial(3)
    E = mv.MultiPoly(("x", "y"), 1, 2, 1, {(0, 0): 1})
    assert E.specialize() == IntPoly([1])
    with pytest.raises(InvalidInputError):
        mv.specialize(M, {"x": "q"})
    with pytest.raises(InvalidInputError):
        mv.specialize(M, {"v": "x"})


def test_printed_specializations(runs):
    F = runs["f1010"]
    assert F[2].specialize() == IntPoly([5, 1])
    assert F[4].specialize() == IntPoly([42, 46, 26, 6])
    assert F[5].specialize() == IntPoly([132, 232, 220, 112, 24])
    assert runs["f1020"][3].specialize() == IntPoly([22, 2])
    assert runs["f1020"][6].specialize() == IntPoly([1806, 1776, 1062, 348, 48])
    assert [M.specialize()(0) for M in runs["f1020"]] == [1, 2, 6, 22, 90, 394, 1806, 8558]
    assert runs["g2020"][3].specialize() == IntPoly([24])
    assert runs["g2020"][4].specialize() == IntPoly([116, 4])
    assert runs["g2020"][7].specialize() == IntPoly([23072, 11680, 4480, 992, 96])
    assert runs["f1011"][3].specialize() == IntPoly([20, 4])
    assert runs["f1011"][6].specialize() == IntPoly([924, 1812, 1572, 636, 96])
    assert [M.specialize()(0) for M in runs["f1011"]] == [math.comb(2 * n - 2, n - 1) for n in range(1, 9)]
    assert runs["h1111"][3].specialize() == IntPoly([24])
    assert runs["h1111"][4].specialize() == IntPoly([104, 16])
    assert runs["h1111"][7].specialize() == IntPoly([9392, 16096, 11056, 3392, 384])


def test_base_cases(runs):
    g3, h3 = runs["g2020"][2], runs["h1111"][2]
    assert g3.terms == {(0, 0, 0): 4, (0, 0, 1 << 3): 2}
    assert str(g3) == "4 + 2*z_3"
    assert h3.terms == {(0, 0, 0, 0): 4, (0, 0, 0, 1 << 2): 2}
    assert str(h3) == "4 + 2*w_2"
    assert [M.mass() for M in runs["h1111"][:2]] == [1, 2]


@pytest.mark.parametrize("name", ENGINE_NAMES)
def test_specialization_equals_oracle(runs, name):
    eng = mv.engine(name)
    for M in runs[name]:
        assert M.specialize() == distribution(M.n, eng.specs[0])


@pytest.mark.parametrize("name", ENGINE_NAMES)
def test_engine_equals_direct_construction(runs, name):
    eng = mv.engine(name)
    for M in runs[name][:7]:
        assert M == mv.direct(eng, M.n)


@pytest.mark.parametrize("name", ENGINE_NAMES)
def test_mass_and_state_bound(runs, name):
    for M in runs[name]:
        assert M.mass() == math.factorial(M.n)
        assert M.well_formed()
        assert len(M) <= M.state_bound()


def test_secondary_families_specialize_to_oracle(runs):
    # send a different family to x: e.g. y in f1010 counts (empty,0,1,0) matches
    eng = mv.engine("f1010")
    for M in runs["f1010"]:
        assert M.specialize({"x": "1", "y": "x"}) == distribution(M.n, eng.specs[1])
    eng = mv.engine("h1111")
    for M in runs["h1111"][:7]:
        for fam, spec in zip(eng.families, eng.specs):
            assert M.specialize({fam: "x"}) == distribution(M.n, spec)


def test_last_position_never_tagged_in_four_quadrant_engines(runs):
    for name in ("f1011", "h1111"):
        for M in runs[name]:
            assert all(not (m >> M.n) & 1 for key in M.terms for m in key)


def test_a_equal_one_is_f1010(runs):
    assert mv.f10a0(1, 8) == runs["f1010"]
    assert mv.f1010(4)[3] == mv.f1010_step(mv.f1010(3)[2])


def test_named_runners_and_lookup():
    assert mv.g2020(5)[-1].specialize() == IntPoly([116, 4])
    assert mv.f1011(4)[-1].specialize() == IntPoly([20, 4])
    assert mv.h1111(5)[-1].specialize() == IntPoly([104, 16])
    assert mv.engine("f10a0:3").name == "f1030"
    with pytest.raises(InvalidInputError):
        mv.engine("nope")
    with pytest.raises(InvalidInputError):
        mv.f10a0(0, 3)
    with pytest.raises(InvalidInputError):
        mv.run_engine(mv.engine("f1010"), 0)
