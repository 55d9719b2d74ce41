"""Certified enumeration of degree vectors satisfying C0-C3.

For fixed ranks, total degree and stability parameter the conditions are
linear inequalities in the degree vector, so the real solutions form a
polyhedron.  Its exact bounding box (one pair of rational LPs per free
coordinate) contains every admissible integer vector; enumerating the
integer points of the box and filtering them through
:func:`~chainstab.conditions.check_conditions` is therefore complete.  An
unbounded polyhedron or an oversized box raises
:class:`~chainstab.errors.EnumerationOverflowError` instead of truncating.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from chainstab.chain_core import ChainInvariants, RationalLike, as_alpha
from chainstab.conditions import SUFFIX_QUOTIENT, check_conditions, standard_shapes
from chainstab.errors import EnumerationOverflowError, InputError
from chainstab.lp import OPTIMAL, Polyhedron

DEFAULT_MAX_POINTS = 2_000_000


def degree_constraints(
    ranks: Sequence[int], total_degree: int, alpha: Sequence[Fraction]
) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Rows ``(w, beta)`` meaning ``w . d <= beta`` for every C0-C3 instance."""
    ranks = tuple(ranks)
    size = len(ranks)
    big_n = sum(ranks)
    weighted = sum((a * n for a, n in zip(alpha, ranks[1:])), Fraction(0))
    rows = []
    for i in range(1, size):
        if ranks[i] == ranks[i - 1] and ranks[i] > 0:
            w = [Fraction(0)] * size
            w[i], w[i - 1] = Fraction(1), Fraction(-1)
            rows.append((tuple(w), Fraction(0)))
    for shape in standard_shapes(ranks):
        if shape.kind == SUFFIX_QUOTIENT:
            continue
        sub_n = sum(shape.sub_ranks)
        sub_weighted = sum((a * n for a, n in zip(alpha, shape.sub_ranks[1:])), Fraction(0))
        # (D' + a.n')/N' <= (D + a.n)/N  with  D' = w.d
        bound = sub_n * (total_degree + weighted) / big_n - sub_weighted
        rows.append((tuple(Fraction(v) for v in shape.degree_weights), bound))
    return rows


@dataclass(frozen=True)
class DegreeBox:
    """Integer bounds per entry; ``None`` when the polyhedron has no real point."""

    lower: tuple[int, ...]
    upper: tuple[int, ...]

    @property
    def size(self) -> int:
        return math.prod(max(0, hi - lo + 1) for lo, hi in zip(self.lower, self.upper))


def certified_box(
    ranks: Sequence[int], total_degree: int, alpha: Sequence[RationalLike]
) -> Optional[DegreeBox]:
    """Exact integer bounding box of the admissible degree vectors.

    Entries with zero rank are pinned to 0 and the last non-zero entry is
    eliminated through the total degree.  Returns None when even the real
    relaxation is empty.
    """
    ranks = tuple(ranks)
    alpha = as_alpha(alpha)
    if len(alpha) != len(ranks) - 1:
        raise InputError("stability parameter length does not match the ranks")
    if sum(ranks) <= 0 or any(n < 0 for n in ranks):
        raise InputError(f"invalid rank vector {ranks}")
    live = [i for i, n in enumerate(ranks) if n > 0]
    last, free = live[-1], live[:-1]
    rows = degree_constraints(ranks, total_degree, alpha)

    # substitute d_last = D - sum(free); identical rows keep the tightest bound
    reduced: dict[tuple[Fraction, ...], Fraction] = {}
    for w, beta in rows:
        key = tuple(w[i] - w[last] for i in free)
        beta = beta - w[last] * total_degree
        reduced[key] = min(beta, reduced.get(key, beta))
    A, b = list(reduced), list(reduced.values())

    lower = [0] * len(ranks)
    upper = [0] * len(ranks)
    if not free:
        if any(beta < 0 for beta in b):
            return None
        lower[last] = upper[last] = total_degree
        return DegreeBox(tuple(lower), tuple(upper))

    objectives = [[int(i == f) for i in free] for f in free]
    objectives.append([-1] * len(free))  # d_last = D - sum(free)
    poly = Polyhedron(A, b)
    if not poly.feasible:
        return None
    bounds = []
    for obj in objectives:
        hi, lo = poly.maximize(obj), poly.minimize(obj)
        if hi.status != OPTIMAL or lo.status != OPTIMAL:
            raise EnumerationOverflowError(
                f"admissible degrees for ranks {ranks} at alpha={_fmt(alpha)} "
                "are unbounded; no finite search box exists"
            )
        bounds.append((math.ceil(lo.value), math.floor(hi.value)))
    for (lo, hi), i in zip(bounds, free):
        lower[i], upper[i] = lo, hi
    lo, hi = bounds[-1]
    lower[last], upper[last] = lo + total_degree, hi + total_degree
    return DegreeBox(tuple(lower), tuple(upper))


def _fmt(alpha: Sequence[Fraction]) -> str:
    return "(" + ",".join(str(a) for a in alpha) + ")"


def iter_admissible_degrees(
    ranks: Sequence[int],
    total_degree: int,
    alpha: Sequence[RationalLike],
    max_points: int = DEFAULT_MAX_POINTS,
) -> Iterator[tuple[int, ...]]:
    """Degree vectors with the given total passing C0-C3, in lexicographic order."""
    ranks = tuple(ranks)
    alpha = as_alpha(alpha)
    box = certified_box(ranks, total_degree, alpha)
    if box is None:
        return
    if box.size > max_points:
        raise EnumerationOverflowError(
            f"search box for ranks {ranks} holds {box.size} points (limit {max_points})"
        )
    live = [i for i, n in enumerate(ranks) if n > 0]
    last, free = live[-1], live[:-1]
    ranges = [range(box.lower[i], box.upper[i] + 1) for i in free]
    for values in itertools.product(*ranges):
        degrees = [0] * len(ranks)
        for i, v in zip(free, values):
            degrees[i] = v
        degrees[last] = total_degree - sum(values)
        if not box.lower[last] <= degrees[last] <= box.upper[last]:
            continue
        ci = ChainInvariants(ranks, tuple(degrees))
        if check_conditions(ci, alpha).all_hold:
            yield ci.degrees


def admissible_degree_vectors(
    ranks: Sequence[int],
    total_degree: int,
    alpha: Sequence[RationalLike],
    max_points: int = DEFAULT_MAX_POINTS,
) -> list[tuple[int, ...]]:
    return list(iter_admissible_degrees(ranks, total_degree, alpha, max_points))
