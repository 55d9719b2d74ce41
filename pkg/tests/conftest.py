from fractions import Fraction

from hypothesis import strategies as st

from chainstab import ChainInvariants

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def chains(draw, max_r=3, max_rank=3, max_degree=8, positive=False):
    r = draw(st.integers(0, max_r))
    lo = 1 if positive else 0
    ranks = draw(st.lists(st.integers(lo, max_rank), min_size=r + 1, max_size=r + 1))
    if sum(ranks) == 0:
        ranks[0] = 1
    degrees = [draw(st.integers(-max_degree, max_degree)) if n else 0 for n in ranks]
    return ChainInvariants(tuple(ranks), tuple(degrees))


@st.composite
def alphas(draw, r, min_gap=None):
    """Increasing-ish rational parameters of length ``r``; gaps above ``min_gap`` if given."""
    out, acc = [], Fraction(0)
    for _ in range(r):
        if min_gap is None:
            acc = draw(rationals)
        else:
            acc += min_gap + draw(st.fractions(min_value=0, max_value=6, max_denominator=6).filter(bool))
        out.append(acc)
    return tuple(out)
