"""Fixed-point types labelling components of the global nilpotent cone.

A chain with ranks ``n_i`` and degrees ``d_i`` gives the Hodge bundle whose
``i``-th summand has degree ``h_i = d_i + i(2g - 2) n_i``.  For a Higgs
bundle of rank ``n`` and degree ``d`` the admissible types are the chains
with ``sum(n_i) = n``, ``sum(h_i) = d`` satisfying C0-C3 at ``alpha_Higgs``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from chainstab.chain_core import ChainInvariants, alpha_higgs, check_genus
from chainstab.enumeration import DEFAULT_MAX_POINTS, iter_admissible_degrees
from chainstab.errors import InputError
from chainstab.moduli import decide_at_higgs


@dataclass(frozen=True)
class FixedPointType:
    chain: ChainInvariants
    higgs_degrees: tuple[int, ...]
    weight: Fraction

    @property
    def ranks(self) -> tuple[int, ...]:
        return self.chain.ranks

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.chain.degrees

    def sort_key(self):
        return (self.chain.r, self.chain.ranks, self.chain.degrees)


def chain_total_degree(ranks: Sequence[int], d: int, g: int) -> int:
    """Total chain degree of a type whose Higgs bundle has degree ``d``."""
    if sum(ranks) <= 0:
        raise InputError("total rank must be positive")
    return d - (2 * g - 2) * sum(i * n for i, n in enumerate(ranks))


def higgs_degrees(ci: ChainInvariants, g: int) -> tuple[int, ...]:
    return tuple(d + i * (2 * g - 2) * n for i, (n, d) in enumerate(zip(ci.ranks, ci.degrees)))


def weight(ci: ChainInvariants, allow_zero_ranks: bool = False) -> Fraction:
    """``-2 sum_{i<j} (j-i) n_i n_j (d_j/n_j - d_i/n_i)``.

    Zero-rank entries are an input error unless ``allow_zero_ranks``, in which
    case they contribute nothing.
    """
    if not allow_zero_ranks and any(n == 0 for n in ci.ranks):
        raise InputError(f"weight needs every rank positive, got {ci.ranks}")
    live = [(i, n, Fraction(d, n)) for i, (n, d) in enumerate(zip(ci.ranks, ci.degrees)) if n]
    total = Fraction(0)
    for (i, ni, si), (j, nj, sj) in itertools.combinations(live, 2):
        total += (j - i) * ni * nj * (sj - si)
    return -2 * total


def rank_vectors(n: int, max_len: int, interior_zeros: bool = False) -> Iterator[tuple[int, ...]]:
    """Rank vectors summing to ``n`` with length at most ``max_len``.

    By default every part is positive.  With ``interior_zeros`` the first and
    last parts are positive and interior parts may vanish.
    """
    for length in range(1, max_len + 1):
        if not interior_zeros:
            for cuts in itertools.combinations(range(1, n), length - 1):
                bounds = (0,) + cuts + (n,)
                yield tuple(b - a for a, b in zip(bounds, bounds[1:]))
            continue
        for ranks in itertools.product(range(n + 1), repeat=length):
            if sum(ranks) == n and ranks[0] > 0 and ranks[-1] > 0:
                yield ranks


def enumerate_fixed_point_types(
    n: int,
    d: int,
    g: int,
    max_len: Optional[int] = None,
    interior_zeros: bool = False,
    max_points: int = DEFAULT_MAX_POINTS,
) -> list[FixedPointType]:
    check_genus(g, 2)
    if n < 1:
        raise InputError(f"rank must be positive, got n={n}")
    max_len = n if max_len is None else max_len
    if max_len < 1:
        raise InputError(f"max_len must be positive, got {max_len}")
    found = []
    for ranks in rank_vectors(n, max_len, interior_zeros):
        ah = alpha_higgs(len(ranks) - 1, g)
        big_d = chain_total_degree(ranks, d, g)
        for degrees in iter_admissible_degrees(ranks, big_d, ah, max_points):
            ci = ChainInvariants(ranks, degrees)
            if not decide_at_higgs(ci, g).nonempty_irreducible:
                raise AssertionError(f"enumerated type {ci} fails the boundary decision")
            w = weight(ci, allow_zero_ranks=interior_zeros)
            found.append(FixedPointType(ci, higgs_degrees(ci, g), w))
    found.sort(key=FixedPointType.sort_key)
    return found


@dataclass(frozen=True)
class ComponentReport:
    types: tuple[FixedPointType, ...]
    coprime: bool

    @property
    def count(self) -> int:
        return len(self.types)

    @property
    def exact(self) -> bool:
        """True when ``count`` is the exact number of irreducible components."""
        return self.coprime


def component_report(n: int, d: int, g: int, **options) -> ComponentReport:
    types = enumerate_fixed_point_types(n, d, g, **options)
    return ComponentReport(tuple(types), math.gcd(n, d) == 1)


def order_by_weight(types: Sequence[FixedPointType]) -> list[tuple[Fraction, list[FixedPointType]]]:
    """Types grouped by weight, heaviest level first.

    The union of the first ``k`` levels corresponds to a closed union of
    downward strata.
    """
    levels: dict[Fraction, list[FixedPointType]] = {}
    for t in types:
        levels.setdefault(t.weight, []).append(t)
    return [(w, levels[w]) for w in sorted(levels, reverse=True)]


def expected_dimension(n: int, g: int) -> int:
    """Dimension ``n^2 (g-1) + 1`` of every irreducible component."""
    check_genus(g, 2)
    if n < 1:
        raise InputError(f"rank must be positive, got n={n}")
    return n * n * (g - 1) + 1
