"""Standard subchains and quotients, and the numerical conditions C0-C3.

Each standard subchain or quotient is determined by the rank vector alone;
its degrees are a fixed linear function of the chain's degrees.  That split
(:class:`SubchainShape` for the rank-only part) lets the condition evaluator
and the degree enumerator share one description of the four families:

``prefix(k)``
    entries ``i <= k`` of the chain, ``0 <= k < r``.
``block_sub(k, j)``
    entries ``k..j`` replaced by ``(n_j, d_j)``; requires
    ``n_j < min(n_k, ..., n_{j-1})``.
``suffix_quotient(k)``
    the quotient keeping entries ``i >= k``, ``0 < k <= r``.
``block_quotient(k, j)``
    the quotient with entries ``k..j`` replaced by ``(n_k, d_k)``; requires
    ``n_k < min(n_{k+1}, ..., n_j)``.

For the quotient families the ``sub`` of a descriptor is the kernel and the
``complement`` is the quotient itself.  The block subchains come with a
canonical map to the chain that need not be injective; numerically this makes
no difference and it is not modelled.

Shapes whose sub or complement would have total rank zero impose no
condition and are omitted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional, Sequence

from chainstab.chain_core import (
    ChainInvariants,
    RationalLike,
    _check_alpha,
    as_alpha,
    check_genus,
    is_above_alpha_higgs,
    slope,
)

PREFIX = "prefix"
BLOCK_SUB = "block_sub"
SUFFIX_QUOTIENT = "suffix_quotient"
BLOCK_QUOTIENT = "block_quotient"


@dataclass(frozen=True)
class SubchainShape:
    kind: str
    k: int
    j: Optional[int]
    sub_ranks: tuple[int, ...]
    complement_ranks: tuple[int, ...]

    def sub_degrees(self, degrees: Sequence[int]) -> tuple[int, ...]:
        if self.kind == PREFIX:
            return tuple(d if i <= self.k else 0 for i, d in enumerate(degrees))
        if self.kind == SUFFIX_QUOTIENT:
            return tuple(d if i < self.k else 0 for i, d in enumerate(degrees))
        lo, hi = self.k, self.j
        if self.kind == BLOCK_SUB:
            return tuple(degrees[hi] if lo <= i <= hi else d for i, d in enumerate(degrees))
        # block_quotient: the kernel lives on k+1..j
        return tuple(
            d - degrees[lo] if lo < i <= hi else 0 for i, d in enumerate(degrees)
        )

    @cached_property
    def sub_total_rank(self) -> int:
        return sum(self.sub_ranks)

    @cached_property
    def degree_weights(self) -> tuple[int, ...]:
        """Coefficients of ``d_i`` in the total degree of the sub."""
        size = len(self.sub_ranks)
        return tuple(
            sum(self.sub_degrees(tuple(int(i == m) for i in range(size))))
            for m in range(size)
        )

    @property
    def label(self) -> str:
        if self.j is None:
            return f"{self.kind}({self.k})"
        return f"{self.kind}({self.k},{self.j})"

    @property
    def condition_tag(self) -> Optional[str]:
        """Name of the condition this shape feeds, or None for suffix quotients."""
        if self.kind == PREFIX:
            return f"C1({self.k})"
        if self.kind == BLOCK_SUB:
            return f"C2({self.k},{self.j})"
        if self.kind == BLOCK_QUOTIENT:
            return f"C3({self.k},{self.j})"
        return None


@lru_cache(maxsize=4096)
def standard_shapes(ranks: tuple[int, ...]) -> tuple[SubchainShape, ...]:
    """All applicable standard shapes, in the canonical order."""
    r = len(ranks) - 1
    out: list[SubchainShape] = []

    def add(kind: str, k: int, j: Optional[int], sub: tuple[int, ...]) -> None:
        comp = tuple(n - m for n, m in zip(ranks, sub))
        if sum(sub) > 0 and sum(comp) > 0:
            out.append(SubchainShape(kind, k, j, sub, comp))

    for k in range(r):
        add(PREFIX, k, None, tuple(n if i <= k else 0 for i, n in enumerate(ranks)))
    for k in range(r):
        for j in range(k + 1, r + 1):
            if ranks[j] < min(ranks[k:j]):
                sub = tuple(ranks[j] if k <= i <= j else n for i, n in enumerate(ranks))
                add(BLOCK_SUB, k, j, sub)
    for k in range(1, r + 1):
        add(SUFFIX_QUOTIENT, k, None, tuple(n if i < k else 0 for i, n in enumerate(ranks)))
    for k in range(r):
        for j in range(k + 1, r + 1):
            if ranks[k] < min(ranks[k + 1 : j + 1]):
                sub = tuple(n - ranks[k] if k < i <= j else 0 for i, n in enumerate(ranks))
                add(BLOCK_QUOTIENT, k, j, sub)
    return tuple(out)


@dataclass(frozen=True)
class StandardSubchain:
    """A standard subchain or quotient together with both halves' invariants."""

    shape: SubchainShape
    sub: ChainInvariants
    complement: ChainInvariants

    @property
    def kind(self) -> str:
        return self.shape.kind

    @property
    def quotient(self) -> ChainInvariants:
        return self.complement


def standard_subchains(ci: ChainInvariants) -> list[StandardSubchain]:
    out = []
    for shape in standard_shapes(ci.ranks):
        sub_d = shape.sub_degrees(ci.degrees)
        comp_d = tuple(d - e for d, e in zip(ci.degrees, sub_d))
        out.append(
            StandardSubchain(
                shape,
                ChainInvariants(shape.sub_ranks, sub_d),
                ChainInvariants(shape.complement_ranks, comp_d),
            )
        )
    return out


@dataclass(frozen=True)
class ConditionCheck:
    tag: str
    key: tuple[int, ...]
    margin: Fraction
    holds: bool


@dataclass(frozen=True)
class ConditionReport:
    """Instance-by-instance outcome of C0-C3.

    For C1-C3 the margin is ``mu(chain) - mu(sub)``; for C0 it is
    ``d_{i-1} - d_i``.  An instance holds iff its margin is non-negative.
    """

    mu: Fraction
    c0: tuple[ConditionCheck, ...]
    c1: tuple[ConditionCheck, ...]
    c2: tuple[ConditionCheck, ...]
    c3: tuple[ConditionCheck, ...]
    all_hold: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "all_hold", all(c.holds for c in self.checks))

    @property
    def checks(self) -> tuple[ConditionCheck, ...]:
        return self.c0 + self.c1 + self.c2 + self.c3

    def first_failure(self) -> Optional[ConditionCheck]:
        return next((c for c in self.checks if not c.holds), None)


def c0_checks(ranks: Sequence[int], degrees: Sequence[int]) -> tuple[ConditionCheck, ...]:
    out = []
    for i in range(1, len(ranks)):
        if ranks[i] == ranks[i - 1]:
            margin = degrees[i - 1] - degrees[i]
            out.append(ConditionCheck(f"C0({i})", (i,), Fraction(margin), margin >= 0))
    return tuple(out)


def _scaled(alpha: Sequence[Fraction]) -> tuple[int, list[int]]:
    """Common denominator ``L`` and integer numerators ``L * alpha_i``."""
    den = math.lcm(*(a.denominator for a in alpha)) if alpha else 1
    return den, [a.numerator * (den // a.denominator) for a in alpha]


def check_conditions(ci: ChainInvariants, alpha: Sequence[RationalLike]) -> ConditionReport:
    alpha = as_alpha(alpha)
    _check_alpha(ci, alpha)
    den, nums = _scaled(alpha)
    ranks, degrees = ci.ranks, ci.degrees
    big_n = ci.total_rank
    # mu = top / (den * N); every sub slope likewise with its own rank
    top = den * ci.total_degree + sum(a * n for a, n in zip(nums, ranks[1:]))
    groups: dict[str, list[ConditionCheck]] = {PREFIX: [], BLOCK_SUB: [], BLOCK_QUOTIENT: []}
    for shape in standard_shapes(ranks):
        if shape.kind == SUFFIX_QUOTIENT:
            continue
        sub_n = shape.sub_total_rank
        sub_top = den * sum(w * d for w, d in zip(shape.degree_weights, degrees) if w)
        sub_top += sum(a * n for a, n in zip(nums, shape.sub_ranks[1:]))
        margin = Fraction(top * sub_n - sub_top * big_n, den * big_n * sub_n)
        key = (shape.k,) if shape.j is None else (shape.k, shape.j)
        groups[shape.kind].append(ConditionCheck(shape.condition_tag, key, margin, margin >= 0))
    return ConditionReport(
        Fraction(top, den * big_n),
        c0_checks(ranks, degrees),
        tuple(groups[PREFIX]),
        tuple(groups[BLOCK_SUB]),
        tuple(groups[BLOCK_QUOTIENT]),
    )


def check_c3_prime(
    ci: ChainInvariants, alpha: Sequence[RationalLike]
) -> list[tuple[tuple[int, int], bool]]:
    """The C3 family evaluated on the quotient side: ``mu(quotient) >= mu``."""
    alpha = as_alpha(alpha)
    _check_alpha(ci, alpha)
    mu = slope(ci.ranks, ci.total_degree, alpha)
    out = []
    for shape in standard_shapes(ci.ranks):
        if shape.kind != BLOCK_QUOTIENT:
            continue
        quot_deg = ci.total_degree - sum(shape.sub_degrees(ci.degrees))
        out.append(((shape.k, shape.j), slope(shape.complement_ranks, quot_deg, alpha) >= mu))
    return out


def admissible(
    ci: ChainInvariants, alpha: Sequence[RationalLike], g: int, at_boundary: bool = False
) -> bool:
    """Whether ``alpha`` lies in the stability region (or its closure).

    With ``at_boundary`` the gaps only need ``alpha_i - alpha_{i-1} >= 2g - 2``,
    so ``alpha_Higgs`` itself is allowed.
    """
    check_genus(g)
    alpha = as_alpha(alpha)
    if not check_conditions(ci, alpha).all_hold:
        return False
    return is_above_alpha_higgs(alpha, g, strict=not at_boundary)
