"""Numerical invariants of chains, alpha-slopes and the basic symmetries.

A chain ``E_r -> ... -> E_0`` is represented only by its rank vector
``(n_0, ..., n_r)`` and degree vector ``(d_0, ..., d_r)``.  A stability
parameter is the tuple ``(alpha_1, ..., alpha_r)`` of fractions; ``alpha_0 = 0``
is implicit everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from chainstab.errors import InputError, PreconditionError

Alpha = Tuple[Fraction, ...]
RationalLike = Union[int, Fraction, str]


@dataclass(frozen=True)
class ChainInvariants:
    """Rank and degree vectors of a chain of length ``r = len(ranks) - 1``."""

    ranks: tuple[int, ...]
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        ranks = tuple(int(n) for n in self.ranks)
        degrees = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "degrees", degrees)
        if not ranks:
            raise InputError("a chain needs at least one entry")
        if len(ranks) != len(degrees):
            raise InputError(
                f"ranks and degrees differ in length ({len(ranks)} != {len(degrees)})"
            )
        if any(n < 0 for n in ranks):
            raise InputError(f"ranks must be non-negative, got {ranks}")
        if sum(ranks) == 0:
            raise InputError("total rank must be positive")
        for i, (n, d) in enumerate(zip(ranks, degrees)):
            if n == 0 and d != 0:
                raise InputError(f"entry {i} has rank 0 but degree {d}")

    @property
    def r(self) -> int:
        return len(self.ranks) - 1

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    def __str__(self) -> str:
        return f"n={self.ranks} d={self.degrees}"


def as_alpha(values: Iterable[RationalLike]) -> Alpha:
    """Coerce ``values`` into an exact stability parameter."""
    out = []
    for v in values:
        if isinstance(v, float):
            raise InputError("stability parameters must be exact rationals, not floats")
        try:
            out.append(Fraction(v))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational number: {v!r}") from exc
    return tuple(out)


def check_genus(g: int, minimum: int = 1) -> int:
    if g < minimum:
        raise PreconditionError(f"genus must be >= {minimum}, got g={g}")
    return g


def _check_alpha(ci: ChainInvariants, alpha: Sequence[Fraction]) -> None:
    if len(alpha) != ci.r:
        raise InputError(
            f"stability parameter has {len(alpha)} entries but the chain has r={ci.r}"
        )


def slope(ranks: Sequence[int], total_degree: int, alpha: Sequence[Fraction]) -> Fraction:
    """alpha-slope of invariants known through their ranks and total degree only."""
    weighted = sum((a * n for a, n in zip(alpha, ranks[1:])), Fraction(0))
    return (total_degree + weighted) / sum(ranks)


def alpha_slope(ci: ChainInvariants, alpha: Sequence[RationalLike]) -> Fraction:
    alpha = as_alpha(alpha)
    _check_alpha(ci, alpha)
    return slope(ci.ranks, ci.total_degree, alpha)


def alpha_higgs(r: int, g: int) -> Alpha:
    """The parameter ``(2g-2, 2(2g-2), ..., r(2g-2))``."""
    if r < 0:
        raise InputError(f"chain length must be non-negative, got r={r}")
    check_genus(g)
    return tuple(Fraction(i * (2 * g - 2)) for i in range(1, r + 1))


def is_above_alpha_higgs(alpha: Sequence[RationalLike], g: int, strict: bool = True) -> bool:
    """Every gap ``alpha_i - alpha_{i-1}`` exceeds ``2g - 2`` (or equals it, if not ``strict``)."""
    alpha = as_alpha(alpha)
    prev = Fraction(0)
    for a in alpha:
        gap = a - prev
        if gap < 2 * g - 2 or (strict and gap == 2 * g - 2):
            return False
        prev = a
    return True


def dualize(
    ci: ChainInvariants, alpha: Sequence[RationalLike]
) -> tuple[ChainInvariants, Alpha]:
    """Invariants and parameter of the dual chain.

    Ranks are reversed, degrees reversed and negated, and
    ``alpha_i -> alpha_r - alpha_{r-i}``, which keeps ``alpha_0 = 0``.
    """
    alpha = as_alpha(alpha)
    _check_alpha(ci, alpha)
    full = (Fraction(0),) + alpha
    r = ci.r
    dual = ChainInvariants(ci.ranks[::-1], tuple(-d for d in ci.degrees[::-1]))
    return dual, tuple(full[r] - full[r - i] for i in range(1, r + 1))


def twist(ci: ChainInvariants, c: int) -> ChainInvariants:
    """Tensor every entry by a degree-``c`` line bundle."""
    return ChainInvariants(ci.ranks, tuple(d + c * n for n, d in zip(ci.ranks, ci.degrees)))
