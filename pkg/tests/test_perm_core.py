import itertools

import pytest
from hypothesis import given, settings, strategies as st

from meshpat.errors import InvalidInputError
from meshpat.perm_core import (
    Bound, KMax, Permutation, QuadSpec, SYMMETRY_ORDERS, complement, insert_bottom,
    insert_top, inverse, matches, matches_kmax, mmp_count, quad_orbit, quadrant_counts,
    reduce, reverse, statistics,
)

SIGMA = Permutation.parse("471569283")


def perms(max_n=8):
    return st.integers(0, max_n).flatmap(
        lambda n: st.permutations(list(range(1, n + 1))).map(lambda w: Permutation(tuple(w))))


def S(*b):
    return QuadSpec.of(*b)


# --- construction and parsing ---------------------------------------------

def test_permutation_rejects_non_permutations():
    with pytest.raises(InvalidInputError):
        Permutation((1, 1, 2))
    with pytest.raises(InvalidInputError):
        Permutation((0, 1))


def test_empty_permutation_is_legal():
    e = Permutation(())
    assert e.n == 0
    assert mmp_count(e, S(0, 0, 0, 0)) == 0


def test_parse_forms():
    assert Permutation.parse("10 2 1 3 4 5 6 7 8 9").n == 10
    assert Permutation.parse("3,1,2") == Permutation((3, 1, 2))
    assert str(SIGMA) == "471569283"


def test_bound_parse_and_empty_equals_exactly_zero():
    assert Bound.parse(3) == Bound.at_least(3)
    assert Bound.parse("ge:2") == Bound.at_least(2)
    assert Bound.parse("eq:1") == Bound.exactly(1)
    assert Bound.parse("empty") == Bound.exactly(0)
    assert hash(Bound.empty()) == hash(Bound.exactly(0))
    assert str(Bound.empty()) == "empty"
    with pytest.raises(InvalidInputError):
        Bound.parse("lots")


def test_quadspec_parse_roundtrip():
    s = QuadSpec.parse("1,eq:2,empty,0")
    assert str(s) == "1,eq:2,empty,0"
    assert QuadSpec.parse(str(s)) == s
    with pytest.raises(InvalidInputError):
        QuadSpec.parse("1,2,3")


# --- reduce ---------------------------------------------------------------

@pytest.mark.parametrize("word,want", [((2, 7, 5, 4), "1432"), ((1, 2, 3), "123"), ((9, 7), "21")])
def test_reduce(word, want):
    assert reduce(word) == Permutation.parse(want)


def test_reduce_rejects_repeats():
    with pytest.raises(InvalidInputError):
        reduce([3, 3])


# --- quadrants and matching -----------------------------------------------

def test_quadrant_counts_worked_example():
    assert quadrant_counts(SIGMA, 4) == (3, 1, 2, 2)
    assert quadrant_counts(SIGMA, 3) == (6, 2, 0, 0)


def test_position_out_of_range():
    with pytest.raises(InvalidInputError):
        quadrant_counts(SIGMA, 0)
    with pytest.raises(InvalidInputError):
        quadrant_counts(SIGMA, 10)


def test_matches_worked_examples():
    assert matches(SIGMA, 4, S(2, 1, 2, 1))
    assert matches(SIGMA, 3, S(4, 2, "empty", "empty"))
    assert not matches(SIGMA, 4, S(4, 0, 0, 0))


@given(perms())
def test_quadrants_partition_the_other_points(sigma):
    for i in range(1, sigma.n + 1):
        c = quadrant_counts(sigma, i)
        assert sum(c) == sigma.n - 1
        assert min(c) >= 0
    if sigma.n:
        c1, c2, c3, c4 = quadrant_counts(sigma, 1)
        assert c2 == c3 == 0


@given(perms())
def test_vacuous_spec_matches_everywhere(sigma):
    assert mmp_count(sigma, S(0, 0, 0, 0)) == sigma.n


@given(perms(7), st.integers(0, 3), st.integers(0, 3))
def test_empty_behaves_like_exactly_zero(sigma, slot, m):
    b = [m, m, m, m]
    e, z = list(b), list(b)
    e[slot], z[slot] = "empty", "eq:0"
    for i in range(1, sigma.n + 1):
        assert matches(sigma, i, S(*e)) == matches(sigma, i, S(*z))


def test_kmax_examples():
    bar = Permutation.parse("534182697")
    assert matches_kmax(bar, 1, 2)
    assert [i for i in range(1, 10) if matches_kmax(bar, i, 2)] == [1]
    ident = Permutation.parse("123")
    assert [matches_kmax(ident, i, 1) for i in (1, 2, 3)] == [True, True, False]
    assert mmp_count(ident, KMax(1)) == 2


@given(perms(7), st.integers(1, 4))
def test_kmax_last_position_never_matches(sigma, k):
    if sigma.n:
        assert not matches_kmax(sigma, sigma.n, k)


@given(perms(7))
def test_kmax_one_agrees_with_one_empty_per_position(sigma):
    for i in range(1, sigma.n + 1):
        assert matches_kmax(sigma, i, 1) == matches(sigma, i, S(1, "empty", 0, 0))


def test_kmax_rejects_k_zero():
    with pytest.raises(InvalidInputError):
        KMax(0)
    with pytest.raises(InvalidInputError):
        matches_kmax(SIGMA, 1, 0)


def test_mmp_count_small_sums():
    def dist(n, spec):
        out = {}
        for w in itertools.permutations(range(1, n + 1)):
            c = mmp_count(w, spec)
            out[c] = out.get(c, 0) + 1
        return out
    assert dist(3, S(1, 0, 1, 0)) == {0: 5, 1: 1}
    assert dist(4, S(1, 0, 1, 1)) == {0: 20, 1: 4}


# --- statistics -----------------------------------------------------------

def test_statistics_identity_and_example():
    for n in range(6):
        s = statistics(tuple(range(1, n + 1)))
        assert s.inv == 0 and s.coinv == n * (n - 1) // 2
        assert s.cycle_count == n
        assert s.rlmax == (1 if n else 0)
    assert statistics(SIGMA).rlmax == 3


def test_rlmax_distribution_is_rising_factorial():
    # x(x+1)(x+2)(x+3) = 6x + 11x^2 + 6x^3 + x^4
    counts = [0] * 5
    for w in itertools.permutations(range(1, 5)):
        counts[statistics(w).rlmax] += 1
    assert counts == [0, 6, 11, 6, 1]


@given(perms())
def test_rlmax_is_empty000_count(sigma):
    assert statistics(sigma).rlmax == mmp_count(sigma, S("empty", 0, 0, 0))


# --- symmetries -----------------------------------------------------------

def test_symmetry_examples():
    assert reverse(Permutation.parse("123")) == Permutation.parse("321")
    assert complement(Permutation.parse("123")) == Permutation.parse("321")
    assert inverse(Permutation.parse("231")) == Permutation.parse("312")
    assert complement(SIGMA) == Permutation.parse("639541827")


@given(perms())
def test_involutions(sigma):
    assert reverse(reverse(sigma)) == sigma
    assert complement(complement(sigma)) == sigma
    assert inverse(inverse(sigma)) == sigma


@given(perms())
def test_quarter_turn_rotates_quadrants(sigma):
    rot = inverse(reverse(sigma))
    for i in range(1, sigma.n + 1):
        c1, c2, c3, c4 = quadrant_counts(sigma, i)
        j = sigma[i - 1]  # (i, v) -> (n+1-i, v) -> (v, n+1-i)
        assert quadrant_counts(rot, j) == (c2, c3, c4, c1)


def test_orbit_examples():
    assert quad_orbit(S(1, 0, 0, 0)) == {S(1, 0, 0, 0), S(0, 1, 0, 0), S(0, 0, 1, 0), S(0, 0, 0, 1)}
    assert quad_orbit(S(1, 1, 1, 1)) == {S(1, 1, 1, 1)}
    assert quad_orbit(S(1, 0, 1, 0)) == {S(1, 0, 1, 0), S(0, 1, 0, 1)}
    assert len(SYMMETRY_ORDERS) == 8


@settings(max_examples=60)
@given(perms(6), st.lists(st.sampled_from([0, 1, 2, "empty"]), min_size=4, max_size=4))
def test_orbit_members_are_realized_by_dihedral_maps(sigma, bounds):
    # every orbit member is the quadrant pattern seen through one of the eight maps, so
    # the match count carries over to the transformed permutation
    spec = S(*bounds)
    images = {sigma, reverse(sigma), complement(sigma), inverse(sigma)}
    for _ in range(3):
        images |= {f(t) for t in images for f in (reverse, complement, inverse)}
    counts = {mmp_count(t, s) for t in images for s in [spec]}
    for s in quad_orbit(spec):
        assert mmp_count(sigma, s) in counts


# --- insertions -----------------------------------------------------------

def test_insert_examples():
    assert insert_bottom((1, 2), 1) == Permutation.parse("123")
    assert insert_bottom((1, 2), 3) == Permutation.parse("231")
    assert insert_top((1, 2), 1) == Permutation.parse("312")
    assert insert_top((1, 2), 3) == Permutation.parse("123")
    assert insert_top((2, 1), 2) == Permutation.parse("231")
    with pytest.raises(InvalidInputError):
        insert_top((1, 2), 4)


def test_bottom_insertion_identity_needs_n_plus_one_minus_k():
    # the new 1 at slot i sees n+1-i larger points to its right
    sigma = Permutation.parse("21")
    k = 1
    assert mmp_count(insert_bottom(sigma, 2), S(k, 0, 0, 0)) == mmp_count(sigma, S(k, 0, 0, 0)) + 1
    # i = n+1-k = 2 exceeds n-k = 1, so the bound i <= n-k would miss this match
    assert not 2 <= sigma.n - k
