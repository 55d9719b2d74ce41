"""Stability regions, walls and critical values in parameter space.

The region attached to ``(n, d)`` is cut out by the half-spaces of C1-C3 and
the strict inequalities ``alpha_i - alpha_{i-1} > 2g - 2``.  A wall is the
hyperplane on which some proper sub-invariant ``(n', D')`` has the same slope
as the chain.  Since ``mu_alpha(n', d')`` only sees ``d'`` through its total
``D'``, walls are keyed by ``(n', D')``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from chainstab.chain_core import (
    Alpha,
    ChainInvariants,
    RationalLike,
    _check_alpha,
    as_alpha,
    check_genus,
    slope,
)
from chainstab.conditions import (
    SUFFIX_QUOTIENT,
    StandardSubchain,
    c0_checks,
    check_conditions,
    standard_shapes,
    standard_subchains,
)
from chainstab.enumeration import iter_admissible_degrees
from chainstab.errors import InputError

LE = "<="
LT = "<"


def _content_reduce(coeffs: Sequence[Fraction], bound: Fraction) -> tuple[tuple[int, ...], int]:
    values = list(coeffs) + [bound]
    lcm = math.lcm(*(Fraction(v).denominator for v in values))
    ints = [int(Fraction(v) * lcm) for v in values]
    g = math.gcd(*ints)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints[:-1]), ints[-1]


@dataclass(frozen=True)
class LinearCondition:
    """The condition ``coeffs . alpha (relation) bound``."""

    coeffs: tuple[int, ...]
    bound: int
    relation: str
    tag: str

    @classmethod
    def make(cls, coeffs: Sequence[Fraction], bound: Fraction, relation: str, tag: str):
        c, b = _content_reduce(coeffs, bound)
        return cls(c, b, relation, tag)

    def value(self, alpha: Sequence[Fraction]) -> Fraction:
        return sum((c * a for c, a in zip(self.coeffs, alpha)), Fraction(0))

    def satisfied(self, alpha: Sequence[Fraction], closure: bool = False) -> bool:
        lhs = self.value(alpha)
        if self.relation == LT and not closure:
            return lhs < self.bound
        return lhs <= self.bound

    def __str__(self) -> str:
        terms = " + ".join(f"{c}*a{i + 1}" for i, c in enumerate(self.coeffs) if c) or "0"
        return f"{terms} {self.relation} {self.bound}  [{self.tag}]"


def _sub_condition(ci: ChainInvariants, sub_ranks: Sequence[int], weights: Sequence[int],
                   tag: str) -> LinearCondition:
    """``mu(sub) <= mu(chain)`` rewritten as ``c . alpha <= b``."""
    big_n, sub_n = ci.total_rank, sum(sub_ranks)
    sub_deg = sum(w * d for w, d in zip(weights, ci.degrees))
    coeffs = [Fraction(big_n * m - sub_n * n) for m, n in zip(sub_ranks[1:], ci.ranks[1:])]
    bound = Fraction(sub_n * ci.total_degree - big_n * sub_deg)
    return LinearCondition.make(coeffs, bound, LE, tag)


def region_halfspaces(ci: ChainInvariants, g: int) -> list[LinearCondition]:
    """H-representation of the stability region of ``ci``.

    Conditions that do not involve ``alpha`` and hold identically are left
    out; a violated C0 instance is kept as the infeasible row ``0 <= -1`` so
    that membership agrees with :func:`~chainstab.conditions.admissible`.
    """
    check_genus(g)
    r = ci.r
    out: list[LinearCondition] = []
    for check in c0_checks(ci.ranks, ci.degrees):
        if not check.holds:
            out.append(LinearCondition.make([Fraction(0)] * r, check.margin, LE, check.tag))
    for shape in standard_shapes(ci.ranks):
        if shape.kind == SUFFIX_QUOTIENT:
            continue
        cond = _sub_condition(ci, shape.sub_ranks, shape.degree_weights, shape.condition_tag)
        if any(cond.coeffs) or cond.bound < 0:
            out.append(cond)
    for i in range(1, r + 1):
        coeffs = [Fraction(0)] * r
        coeffs[i - 1] = Fraction(-1)
        if i >= 2:
            coeffs[i - 2] = Fraction(1)
        out.append(LinearCondition.make(coeffs, Fraction(-(2 * g - 2)), LT, f"AboveHiggs({i})"))
    return out


def region_contains(
    halfspaces: Iterable[LinearCondition], alpha: Sequence[RationalLike], closure: bool = False
) -> bool:
    alpha = as_alpha(alpha)
    ok = True
    for cond in halfspaces:
        if len(cond.coeffs) != len(alpha):
            raise InputError(
                f"condition {cond.tag} lives in dimension {len(cond.coeffs)}, "
                f"alpha has {len(alpha)} entries"
            )
        ok = ok and cond.satisfied(alpha, closure)
    return ok


@dataclass(frozen=True)
class Wall:
    """The hyperplane ``normal . alpha = offset`` where ``mu(n', D') = mu(n, d)``."""

    sub_ranks: tuple[int, ...]
    sub_total_degree: int
    normal: tuple[int, ...]
    offset: int

    @property
    def hyperplane(self) -> tuple[tuple[int, ...], int]:
        """Sign-normalized ``(normal, offset)``; equal for geometrically equal walls."""
        lead = next(c for c in self.normal if c)
        if lead < 0:
            return tuple(-c for c in self.normal), -self.offset
        return self.normal, self.offset

    def contains(self, alpha: Sequence[Fraction]) -> bool:
        return sum((c * a for c, a in zip(self.normal, alpha)), Fraction(0)) == self.offset


def _make_wall(ci: ChainInvariants, sub_ranks: tuple[int, ...], sub_deg: int) -> Optional[Wall]:
    big_n, sub_n = ci.total_rank, sum(sub_ranks)
    normal = [Fraction(big_n * m - sub_n * n) for m, n in zip(sub_ranks[1:], ci.ranks[1:])]
    if not any(normal):
        return None
    offset = Fraction(sub_n * ci.total_degree - big_n * sub_deg)
    c, b = _content_reduce(normal, offset)
    return Wall(sub_ranks, sub_deg, c, b)


def proper_sub_ranks(ranks: Sequence[int]) -> list[tuple[int, ...]]:
    """All ``0 <= n' <= n`` componentwise with ``n'`` neither zero nor ``n``."""
    ranks = tuple(ranks)
    zero = tuple(0 for _ in ranks)
    return [
        m
        for m in itertools.product(*(range(n + 1) for n in ranks))
        if m != zero and m != ranks
    ]


def _merge(walls: list[Wall]) -> list[Wall]:
    seen = {}
    for w in walls:
        seen.setdefault(w.hyperplane, w)
    return list(seen.values())


def _wall_sort_key(w: Wall):
    return (w.sub_ranks, w.sub_total_degree)


def _is_effective(ci: ChainInvariants, wall: Wall, alpha: Alpha) -> bool:
    """Some degree split realizes the wall with both halves satisfying C0-C3."""
    comp_ranks = tuple(n - m for n, m in zip(ci.ranks, wall.sub_ranks))
    for sub_d in iter_admissible_degrees(wall.sub_ranks, wall.sub_total_degree, alpha):
        comp_d = tuple(d - e for d, e in zip(ci.degrees, sub_d))
        if any(n == 0 and d != 0 for n, d in zip(comp_ranks, comp_d)):
            continue
        if check_conditions(ChainInvariants(comp_ranks, comp_d), alpha).all_hold:
            return True
    return False


def walls_through(
    ci: ChainInvariants,
    alpha: Sequence[RationalLike],
    merge: bool = False,
    effective_only: bool = False,
) -> list[Wall]:
    """Walls containing ``alpha``; ``alpha`` is a critical value iff this is non-empty.

    ``merge`` identifies walls cutting out the same hyperplane, keeping the
    smallest key.  ``effective_only`` keeps walls for which some degree vector
    with the wall's total makes both the sub and the complement satisfy C0-C3
    at ``alpha``.
    """
    alpha = as_alpha(alpha)
    _check_alpha(ci, alpha)
    mu = slope(ci.ranks, ci.total_degree, alpha)
    walls = []
    for m in proper_sub_ranks(ci.ranks):
        need = sum(m) * mu - sum((a * k for a, k in zip(alpha, m[1:])), Fraction(0))
        if need.denominator != 1:
            continue
        wall = _make_wall(ci, m, int(need))
        if wall is not None:
            walls.append(wall)
    if effective_only:
        walls = [w for w in walls if _is_effective(ci, w, alpha)]
    walls.sort(key=_wall_sort_key)
    return _merge(walls) if merge else walls


def _point(lo: Alpha, hi: Alpha, t: Fraction) -> Alpha:
    return tuple((1 - t) * a + t * b for a, b in zip(lo, hi))


class SegmentInWallError(InputError):
    """The segment is contained in a wall, so its critical set is not finite."""


def critical_values_on_segment(
    ci: ChainInvariants,
    alpha_minus: Sequence[RationalLike],
    alpha_plus: Sequence[RationalLike],
) -> list[tuple[Fraction, list[Wall]]]:
    """Parameters ``t`` in ``[0, 1]`` at which ``(1-t) a_- + t a_+`` is critical.

    Along the segment the required sub-degree ``D'(t) = N' mu(t) - alpha(t).n'``
    is affine in ``t``, so each ``n'`` contributes the integers between
    ``D'(0)`` and ``D'(1)``, each at exactly one ``t``.
    """
    a0, a1 = as_alpha(alpha_minus), as_alpha(alpha_plus)
    _check_alpha(ci, a0)
    _check_alpha(ci, a1)
    if a0 == a1:
        raise InputError("degenerate segment: both endpoints are equal")
    mu0 = slope(ci.ranks, ci.total_degree, a0)
    mu1 = slope(ci.ranks, ci.total_degree, a1)
    hits: dict[Fraction, list[Wall]] = {}
    for m in proper_sub_ranks(ci.ranks):
        f0 = sum(m) * mu0 - sum((a * k for a, k in zip(a0, m[1:])), Fraction(0))
        f1 = sum(m) * mu1 - sum((a * k for a, k in zip(a1, m[1:])), Fraction(0))
        if f0 == f1:
            if f0.denominator == 1 and _make_wall(ci, m, int(f0)) is not None:
                raise SegmentInWallError(
                    f"segment lies inside the wall of sub-invariants n'={m}, D'={int(f0)}"
                )
            continue
        for dp in range(math.ceil(min(f0, f1)), math.floor(max(f0, f1)) + 1):
            wall = _make_wall(ci, m, dp)
            if wall is None:
                continue
            t = (dp - f0) / (f1 - f0)
            hits.setdefault(t, []).append(wall)
    return [(t, sorted(hits[t], key=_wall_sort_key)) for t in sorted(hits)]


def walls_in_box(
    ci: ChainInvariants,
    lo: Sequence[RationalLike],
    hi: Sequence[RationalLike],
    merge: bool = False,
) -> list[Wall]:
    """Walls meeting the closed box ``[lo, hi]``.

    ``D'(alpha)`` is affine, so over the box it sweeps exactly the interval
    between its extreme values at the vertices; each integer in that interval
    gives one wall through the box.
    """
    lo, hi = as_alpha(lo), as_alpha(hi)
    _check_alpha(ci, lo)
    _check_alpha(ci, hi)
    if any(a > b for a, b in zip(lo, hi)):
        raise InputError(f"empty box: lower corner {lo} exceeds upper corner {hi}")
    vertices = list(itertools.product(*zip(lo, hi)))
    mus = [slope(ci.ranks, ci.total_degree, v) for v in vertices]
    walls = []
    for m in proper_sub_ranks(ci.ranks):
        values = [
            sum(m) * mu - sum((a * k for a, k in zip(v, m[1:])), Fraction(0))
            for v, mu in zip(vertices, mus)
        ]
        for dp in range(math.ceil(min(values)), math.floor(max(values)) + 1):
            wall = _make_wall(ci, m, dp)
            if wall is not None:
                walls.append(wall)
    walls.sort(key=_wall_sort_key)
    return _merge(walls) if merge else walls


@dataclass(frozen=True)
class WallSplitViolation:
    chain: ChainInvariants
    alpha: Alpha
    descriptor: StandardSubchain
    failing_half: str


def wall_split_violations(ci: ChainInvariants, alpha: Sequence[RationalLike]) -> list[WallSplitViolation]:
    """Standard walls through ``alpha`` whose halves fail C0-C3.

    For admissible ``(ci, alpha)`` sitting on the wall of a standard subchain
    or quotient, both the sub-invariants and the complementary invariants are
    expected to satisfy C0-C3 at the same ``alpha``.  Returns the
    counterexamples (an empty list when the expectation holds or when
    ``ci`` is not admissible at ``alpha``).
    """
    alpha = as_alpha(alpha)
    if not check_conditions(ci, alpha).all_hold:
        return []
    mu = slope(ci.ranks, ci.total_degree, alpha)
    out = []
    for desc in standard_subchains(ci):
        if slope(desc.sub.ranks, desc.sub.total_degree, alpha) != mu:
            continue
        for name, half in (("sub", desc.sub), ("complement", desc.complement)):
            if not check_conditions(half, alpha).all_hold:
                out.append(WallSplitViolation(ci, alpha, desc, name))
    return out


def on_standard_wall(ci: ChainInvariants, alpha: Sequence[RationalLike]) -> bool:
    """Whether some C1-C3 instance holds with equality at ``alpha``."""
    report = check_conditions(ci, alpha)
    return any(c.margin == 0 for c in report.c1 + report.c2 + report.c3)


@dataclass
class WallSplitSummary:
    instances: int = 0
    admissible: int = 0
    on_wall: int = 0
    violations: list = None

    def __post_init__(self) -> None:
        if self.violations is None:
            self.violations = []


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def verify_wall_splitting(
    max_r: int = 3,
    max_total_rank: int = 5,
    g: int = 2,
    steps: Sequence[RationalLike] = (0, Fraction(1, 2), 1, 2),
) -> WallSplitSummary:
    """Exhaustive check of :func:`wall_split_violations`.

    Ranks run over all positive vectors of length ``<= max_r + 1`` and total
    ``<= max_total_rank``; total degrees over one residue system modulo the
    total rank (twisting preserves every condition and wall); parameters over
    ``alpha_i - alpha_{i-1} = 2g - 2 + s`` for ``s`` in ``steps``; and degree
    vectors over the certified admissible set.
    """
    check_genus(g)
    steps = as_alpha(steps)
    summary = WallSplitSummary()
    for r in range(1, max_r + 1):
        grid = []
        for gaps in itertools.product(steps, repeat=r):
            acc, alpha = Fraction(0), []
            for s in gaps:
                acc += 2 * g - 2 + s
                alpha.append(acc)
            grid.append(tuple(alpha))
        for total in range(r + 1, max_total_rank + 1):
            for ranks in _compositions(total, r + 1):
                for big_d in range(total):
                    for alpha in grid:
                        summary.instances += 1
                        for degrees in iter_admissible_degrees(ranks, big_d, alpha):
                            ci = ChainInvariants(ranks, degrees)
                            summary.admissible += 1
                            if on_standard_wall(ci, alpha):
                                summary.on_wall += 1
                                summary.violations.extend(wall_split_violations(ci, alpha))
    return summary
