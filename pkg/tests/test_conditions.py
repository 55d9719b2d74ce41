from fractions import Fraction

from hypothesis import given, settings, strategies as st

from chainstab import (
    ChainInvariants,
    admissible,
    check_c3_prime,
    check_conditions,
    dualize,
    standard_subchains,
)
from chainstab.chain_core import alpha_slope
from chainstab.conditions import BLOCK_QUOTIENT, BLOCK_SUB, PREFIX, SUFFIX_QUOTIENT

import oracles
from conftest import alphas, chains


def test_standard_subchains_example():
    subs = standard_subchains(ChainInvariants((2, 1), (1, 0)))
    assert [(s.kind, s.shape.k, s.shape.j) for s in subs] == [
        (PREFIX, 0, None), (BLOCK_SUB, 0, 1), (SUFFIX_QUOTIENT, 1, None)
    ]
    prefix, block, suffix = subs
    assert prefix.sub == ChainInvariants((2, 0), (1, 0))
    assert block.sub == ChainInvariants((1, 1), (0, 0))
    assert suffix.quotient == ChainInvariants((0, 1), (0, 0))


def test_constant_rank_has_no_block_shapes():
    kinds = {s.kind for s in standard_subchains(ChainInvariants((2, 2, 2), (1, 0, -1)))}
    assert kinds == {PREFIX, SUFFIX_QUOTIENT}
    assert standard_subchains(ChainInvariants((3,), (1,))) == []


def test_check_conditions_examples():
    rep = check_conditions(ChainInvariants((1, 1), (0, -1)), (2,))
    assert [c.holds for c in rep.c0] == [True]
    assert rep.c1[0].margin == Fraction(1, 2) and rep.all_hold

    rep = check_conditions(ChainInvariants((1, 1), (1, -2)), (2,))
    assert rep.c1[0].margin == Fraction(-1, 2) and not rep.all_hold
    assert rep.first_failure().tag == "C1(0)"

    rep = check_conditions(ChainInvariants((1, 1), (0, 1)), (3,))
    assert rep.first_failure().tag == "C0(1)" and rep.c0[0].key == (1,)


def test_c3_equality_example():
    ci = ChainInvariants((1, 2), (0, -1))
    rep = check_conditions(ci, (2,))
    assert [(c.key, c.margin, c.holds) for c in rep.c3] == [((0, 1), 0, True)]
    assert check_c3_prime(ci, (2,)) == [((0, 1), True)]
    assert check_c3_prime(ChainInvariants((1, 1), (0, 0)), (2,)) == []


def test_admissible_examples():
    ci = ChainInvariants((1, 1), (0, -1))
    assert admissible(ci, (2,), 2, at_boundary=True)
    assert not admissible(ci, (2,), 2, at_boundary=False)
    assert not admissible(ChainInvariants((2, 1), (1, 0)), (3,), 2)


def _compare_with_literal(ci, alpha):
    rep = check_conditions(ci, alpha)
    literal = oracles.literal_conditions(ci.ranks, ci.degrees, alpha)
    mine = {c.tag: c.holds for c in rep.checks}
    for tag, holds in literal.items():
        assert mine[tag] == holds, tag
    for tag in set(mine) - set(literal):
        # zero-rank neighbours: an equal-rank C0 instance that is vacuous
        assert tag.startswith("C0") and mine[tag]
    assert rep.all_hold == all(literal.values())


@settings(max_examples=400)
@given(chains(), st.data())
def test_matches_literal_definitions(ci, data):
    _compare_with_literal(ci, data.draw(alphas(ci.r)))


@given(chains(), st.data())
def test_margins_are_slope_differences(ci, data):
    alpha = data.draw(alphas(ci.r))
    rep = check_conditions(ci, alpha)
    assert rep.mu == alpha_slope(ci, alpha)
    subs = [s for s in standard_subchains(ci) if s.kind != SUFFIX_QUOTIENT]
    checks = rep.c1 + rep.c2 + rep.c3
    order = {PREFIX: 0, BLOCK_SUB: 1, BLOCK_QUOTIENT: 2}
    subs.sort(key=lambda s: order[s.kind])
    assert len(subs) == len(checks)
    for s, c in zip(subs, checks):
        assert c.margin == rep.mu - alpha_slope(s.sub, alpha)
        assert c.holds == (c.margin >= 0)


@given(chains(), st.data())
def test_sub_and_complement_sum_and_balance(ci, data):
    alpha = data.draw(alphas(ci.r))
    mu = alpha_slope(ci, alpha)
    for s in standard_subchains(ci):
        assert tuple(a + b for a, b in zip(s.sub.ranks, s.complement.ranks)) == ci.ranks
        assert tuple(a + b for a, b in zip(s.sub.degrees, s.complement.degrees)) == ci.degrees
        sub_ok = alpha_slope(s.sub, alpha) <= mu
        assert sub_ok == (alpha_slope(s.complement, alpha) >= mu)


@given(chains(), st.data())
def test_c3_prime_matches_c3(ci, data):
    alpha = data.draw(alphas(ci.r))
    c3 = {c.key: c.holds for c in check_conditions(ci, alpha).c3}
    assert dict(check_c3_prime(ci, alpha)) == c3


@settings(max_examples=300)
@given(chains(), st.data())
def test_duality_exchanges_conditions(ci, data):
    alpha = data.draw(alphas(ci.r))
    dual, dual_alpha = dualize(ci, alpha)
    assert check_conditions(ci, alpha).all_hold == check_conditions(dual, dual_alpha).all_hold
