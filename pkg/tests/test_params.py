from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from chainstab import ChainInvariants, InputError, PreconditionError, admissible, dualize
from chainstab.params import (
    LE,
    LT,
    SegmentInWallError,
    critical_values_on_segment,
    on_standard_wall,
    region_contains,
    region_halfspaces,
    verify_wall_splitting,
    wall_split_violations,
    walls_in_box,
    walls_through,
)

import oracles
from conftest import alphas, chains

TRIPLE = ChainInvariants((2, 1), (1, 0))
EASY = ChainInvariants((1, 1), (0, -1))
SPLIT = ChainInvariants((1, 1), (3, 0))


def rows(conds):
    return [(c.coeffs, c.relation, c.bound, c.tag) for c in conds]


def test_region_examples():
    assert rows(region_halfspaces(TRIPLE, 2)) == [
        ((-2,), LE, -1, "C1(0)"),      # alpha >= 1/2
        ((1,), LE, 2, "C2(0,1)"),      # alpha <= 2
        ((-1,), LT, -2, "AboveHiggs(1)"),
    ]
    assert rows(region_halfspaces(EASY, 2)) == [
        ((-1,), LE, -1, "C1(0)"),
        ((-1,), LT, -2, "AboveHiggs(1)"),
    ]
    assert region_halfspaces(ChainInvariants((2,), (1,)), 2) == []


def test_region_contains_examples():
    spaces = region_halfspaces(TRIPLE, 2)
    assert region_contains(spaces, (2,), closure=True)
    assert not region_contains(spaces, (2,), closure=False)
    assert region_contains(region_halfspaces(EASY, 2), (3,))
    # a negative C1 margin fails in both modes
    failing = region_halfspaces(ChainInvariants((1, 1), (1, -2)), 2)
    assert not region_contains(failing, (2,), True) and not region_contains(failing, (2,))
    with pytest.raises(InputError):
        region_contains(spaces, (1, 2))


def test_failing_c0_stays_in_region():
    spaces = region_halfspaces(ChainInvariants((1, 1), (0, 1)), 2)
    assert spaces[0].tag == "C0(1)"
    assert not region_contains(spaces, (5,), closure=True)


def wall_keys(walls):
    return [(w.sub_ranks, w.sub_total_degree) for w in walls]


def test_walls_through_examples():
    assert wall_keys(walls_through(SPLIT, (3,))) == [((0, 1), 0), ((1, 0), 3)]
    assert walls_through(SPLIT, (2,)) == []
    assert walls_through(ChainInvariants((3,), (1,)), ()) == []
    merged = walls_through(SPLIT, (3,), merge=True)
    assert len(merged) == 1 and merged[0].hyperplane == ((1,), 3)
    for w in walls_through(SPLIT, (3,)):
        assert w.contains((Fraction(3),))


def test_effective_walls_are_a_subset():
    ci = ChainInvariants((1, 2), (2, 0))
    for a in (Fraction(2), Fraction(4), Fraction(6)):
        assert set(walls_through(ci, (a,), effective_only=True)) <= set(walls_through(ci, (a,)))
    # at alpha = 3 the split (1,0) + (0,1) is effective: both halves are line bundles
    assert walls_through(SPLIT, (3,), effective_only=True) == walls_through(SPLIT, (3,))


def test_segment_examples():
    crit = critical_values_on_segment(SPLIT, (2,), (4,))
    assert [t for t, _ in crit] == [Fraction(1, 2)]
    assert wall_keys(crit[0][1]) == wall_keys(walls_through(SPLIT, (3,)))
    assert critical_values_on_segment(SPLIT, (Fraction(21, 10),), (Fraction(29, 10),)) == []
    with pytest.raises(InputError):
        critical_values_on_segment(SPLIT, (2,), (2,))


def test_segment_inside_a_wall():
    ci = ChainInvariants((1, 1, 1), (0, 0, 0))
    start = (3, 3)
    w = walls_through(ci, start)[0]
    end = (start[0] - w.normal[1], start[1] + w.normal[0])
    with pytest.raises(SegmentInWallError):
        critical_values_on_segment(ci, start, end)


def test_box_examples():
    assert wall_keys(walls_in_box(SPLIT, (2,), (4,))) == [((0, 1), 0), ((1, 0), 3)]
    assert len(walls_in_box(SPLIT, (2,), (4,), merge=True)) == 1
    assert walls_in_box(SPLIT, (Fraction(21, 10),), (Fraction(29, 10),)) == []
    with pytest.raises(InputError):
        walls_in_box(SPLIT, (4,), (2,))


@given(chains(max_r=2), st.data())
def test_box_monotone(ci, data):
    assume(ci.r >= 1)
    lo = data.draw(alphas(ci.r))
    grow = [data.draw(st.fractions(0, 3, max_denominator=4)) for _ in range(ci.r)]
    more = [data.draw(st.fractions(0, 2, max_denominator=4)) for _ in range(ci.r)]
    hi = tuple(a + g for a, g in zip(lo, grow))
    bigger_hi = tuple(a + m for a, m in zip(hi, more))
    assert set(walls_in_box(ci, lo, hi)) <= set(walls_in_box(ci, lo, bigger_hi))


@settings(max_examples=200, deadline=None)
@given(chains(max_r=2), st.data())
def test_segment_values_are_critical(ci, data):
    assume(ci.r >= 1)
    a0, a1 = data.draw(alphas(ci.r)), data.draw(alphas(ci.r))
    assume(a0 != a1)
    try:
        crit = critical_values_on_segment(ci, a0, a1)
    except SegmentInWallError:
        return
    for t, walls in crit:
        point = tuple((1 - t) * x + t * y for x, y in zip(a0, a1))
        assert set(walls) == set(walls_through(ci, point))
    dual, d0 = dualize(ci, a0)
    _, d1 = dualize(ci, a1)
    assert [t for t, _ in critical_values_on_segment(dual, d0, d1)] == [t for t, _ in crit]


@settings(max_examples=300)
@given(chains(), st.sampled_from([2, 3]), st.data())
def test_region_matches_admissible(ci, g, data):
    alpha = data.draw(alphas(ci.r))
    spaces = region_halfspaces(ci, g)
    assert region_contains(spaces, alpha) == admissible(ci, alpha, g)
    assert region_contains(spaces, alpha, closure=True) == admissible(ci, alpha, g, True)


@settings(max_examples=200)
@given(chains(max_r=2), st.data())
def test_region_is_convex(ci, data):
    a = data.draw(alphas(ci.r, min_gap=2))
    b = data.draw(alphas(ci.r, min_gap=2))
    spaces = region_halfspaces(ci, 2)
    if region_contains(spaces, a) and region_contains(spaces, b):
        assert region_contains(spaces, tuple((x + y) / 2 for x, y in zip(a, b)))


def test_region_needs_valid_genus():
    with pytest.raises(PreconditionError):
        region_halfspaces(EASY, 0)


def test_wall_splitting_small():
    summary = verify_wall_splitting(max_r=2, max_total_rank=4, g=2)
    assert summary.on_wall > 0 and summary.violations == []


def test_wall_split_example():
    # alpha_Higgs = 2 is the C2(0,1) wall of the triple
    assert on_standard_wall(TRIPLE, (2,))
    assert wall_split_violations(TRIPLE, (2,)) == []
    assert not on_standard_wall(EASY, (3,))
