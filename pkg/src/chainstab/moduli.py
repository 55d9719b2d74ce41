"""Non-emptiness and irreducibility decisions for chain and U(p,q) moduli."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from chainstab.chain_core import (
    Alpha,
    ChainInvariants,
    RationalLike,
    alpha_higgs,
    as_alpha,
    check_genus,
    is_above_alpha_higgs,
)
from chainstab.conditions import c0_checks, check_conditions
from chainstab.errors import InputError, PreconditionError
from chainstab.params import region_contains, region_halfspaces


@dataclass(frozen=True)
class Certificate:
    tag: str
    margin: Fraction


@dataclass(frozen=True)
class ModuliDecision:
    nonempty_irreducible: bool
    failing_certificate: Optional[Certificate] = None

    def __post_init__(self) -> None:
        if self.nonempty_irreducible == (self.failing_certificate is not None):
            raise ValueError("a certificate accompanies exactly the negative decisions")


def _decide(ci: ChainInvariants, alpha: Alpha) -> ModuliDecision:
    failure = check_conditions(ci, alpha).first_failure()
    if failure is None:
        return ModuliDecision(True)
    return ModuliDecision(False, Certificate(failure.tag, failure.margin))


def decide_above_higgs(ci: ChainInvariants, alpha: Sequence[RationalLike], g: int) -> ModuliDecision:
    """Decision for the stack of alpha-semistable chains, ``alpha > alpha_Higgs``."""
    check_genus(g, 1)
    alpha = as_alpha(alpha)
    if not is_above_alpha_higgs(alpha, g):
        raise PreconditionError(
            f"alpha={tuple(str(a) for a in alpha)} is not strictly above alpha_Higgs for g={g}; "
            "use the boundary decision at alpha_Higgs instead"
        )
    return _decide(ci, alpha)


def decide_at_higgs(ci: ChainInvariants, g: int) -> ModuliDecision:
    """Decision for the coarse moduli space at ``alpha = alpha_Higgs`` (needs ``g >= 2``).

    Non-empty and irreducible iff C0 holds and ``alpha_Higgs`` lies in the
    closure of the stability region.
    """
    check_genus(g, 2)
    ah = alpha_higgs(ci.r, g)
    decision = _decide(ci, ah)
    in_closure = all(c.holds for c in c0_checks(ci.ranks, ci.degrees)) and region_contains(
        region_halfspaces(ci, g), ah, closure=True
    )
    assert in_closure == decision.nonempty_irreducible
    return decision


INF = math.inf


@dataclass(frozen=True)
class TripleBounds:
    """``alpha_min <= alpha <= alpha_max``; ``alpha_max`` is ``math.inf`` when ``n_0 = n_1``."""

    alpha_min: Fraction
    alpha_max: Union[Fraction, float]

    @property
    def empty(self) -> bool:
        return self.alpha_max < self.alpha_min

    def contains(self, alpha: RationalLike) -> bool:
        alpha = Fraction(alpha)
        return self.alpha_min <= alpha <= self.alpha_max


def triple_bounds(ci: ChainInvariants) -> TripleBounds:
    if ci.r != 1:
        raise InputError(f"triple bounds need a chain of length 1, got r={ci.r}")
    (n0, n1), (d0, d1) = ci.ranks, ci.degrees
    if n0 <= 0 or n1 <= 0:
        raise InputError(f"triple bounds need positive ranks, got {ci.ranks}")
    lo = Fraction(d0, n0) - Fraction(d1, n1)
    if n0 == n1:
        return TripleBounds(lo, INF)
    return TripleBounds(lo, (1 + Fraction(n0 + n1, abs(n0 - n1))) * lo)


@dataclass(frozen=True)
class UpqInvariants:
    """Ranks ``p = rk V``, ``q = rk W`` and degrees ``a = deg V``, ``b = deg W``."""

    p: int
    q: int
    a: int
    b: int
    g: int

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise InputError(f"U(p,q) ranks must be positive, got p={self.p}, q={self.q}")
        check_genus(self.g, 2)


def upq_to_triple(u: UpqInvariants) -> tuple[ChainInvariants, Alpha]:
    """Triple ``V -> W (x) Omega`` of a U(p,q)-Higgs bundle with vanishing ``beta``.

    The pair is first normalized to ``mu(V) >= mu(W)`` by dualizing, which
    negates both degrees.  ``deg(W (x) Omega) = b + q(2g - 2)``.
    """
    a, b = u.a, u.b
    if Fraction(a, u.p) < Fraction(b, u.q):
        a, b = -a, -b
    twist = 2 * u.g - 2
    return ChainInvariants((u.q, u.p), (b + u.q * twist, a)), (Fraction(twist),)


@dataclass(frozen=True)
class UpqReport:
    nonempty: bool
    connected: bool


def upq_report(u: UpqInvariants) -> UpqReport:
    """Non-emptiness of the U(p,q) moduli space; connected whenever non-empty.

    An empty space is reported as not connected.
    """
    ci, _ = upq_to_triple(u)
    nonempty = decide_at_higgs(ci, u.g).nonempty_irreducible
    return UpqReport(nonempty=nonempty, connected=nonempty)
