"""Euler characteristic of the Hom complex between two chains.

For chains ``E''`` (source) and ``E'`` (target) of the same length the complex
``[ (+)_i Hom(E''_i, E'_i) -> (+)_{i>=1} Hom(E''_i, E'_{i-1}) ]`` has Euler
characteristic computed termwise by Riemann-Roch:
``chi(Hom(F, E)) = rk F rk E (1 - g) + rk F deg E - rk E deg F``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from chainstab.chain_core import ChainInvariants, alpha_higgs, check_genus, slope
from chainstab.conditions import check_conditions
from chainstab.errors import InputError


def hom_chi(src_rank: int, src_deg: int, tgt_rank: int, tgt_deg: int, g: int) -> int:
    return src_rank * tgt_rank * (1 - g) + src_rank * tgt_deg - tgt_rank * src_deg


def chi(source: ChainInvariants, target: ChainInvariants, g: int) -> int:
    check_genus(g, 1)
    if source.r != target.r:
        raise InputError(f"chains of different lengths: r={source.r} and r={target.r}")
    sn, sd = source.ranks, source.degrees
    tn, td = target.ranks, target.degrees
    total = sum(hom_chi(sn[i], sd[i], tn[i], td[i], g) for i in range(len(sn)))
    total -= sum(hom_chi(sn[i], sd[i], tn[i - 1], td[i - 1], g) for i in range(1, len(sn)))
    return total


@dataclass(frozen=True)
class ChiViolation:
    source: ChainInvariants
    target: ChainInvariants
    chi: int


@dataclass
class ChiScanResult:
    violations: list[ChiViolation] = field(default_factory=list)
    boundary: list[tuple[ChainInvariants, ChainInvariants]] = field(default_factory=list)
    chains: int = 0
    pairs: int = 0


def _admissible_chains(r: int, rank_bound: int, degree_bound: int, g: int) -> Iterator[ChainInvariants]:
    ah = alpha_higgs(r, g)
    for ranks in itertools.product(range(rank_bound + 1), repeat=r + 1):
        if not any(ranks):
            continue
        ranges = [range(-degree_bound, degree_bound + 1) if n else range(1) for n in ranks]
        for degrees in itertools.product(*ranges):
            ci = ChainInvariants(ranks, degrees)
            if check_conditions(ci, ah).all_hold:
                yield ci


def chi_scan(rank_bound: int, degree_bound: int, r_max: int, g: int) -> ChiScanResult:
    """Every ordered pair of admissible equal-slope chains with ``chi > 0``.

    Chains have length ``r <= r_max``, ranks in ``[0, rank_bound]`` and
    degrees in ``[-degree_bound, degree_bound]``, and satisfy C0-C3 at
    ``alpha_Higgs``; only pairs with equal ``alpha_Higgs``-slope are compared.
    Pairs with ``chi = 0`` are collected separately as boundary cases.
    """
    check_genus(g, 2)
    result = ChiScanResult()
    for r in range(r_max + 1):
        ah = alpha_higgs(r, g)
        by_slope: dict[Fraction, list[ChainInvariants]] = defaultdict(list)
        for ci in _admissible_chains(r, rank_bound, degree_bound, g):
            by_slope[slope(ci.ranks, ci.total_degree, ah)].append(ci)
            result.chains += 1
        for group in by_slope.values():
            for source, target in itertools.product(group, repeat=2):
                result.pairs += 1
                value = chi(source, target, g)
                if value > 0:
                    result.violations.append(ChiViolation(source, target, value))
                elif value == 0:
                    result.boundary.append((source, target))
    return result


def chi_nonpositivity_scan(rank_bound: int, degree_bound: int, r_max: int, g: int) -> list[ChiViolation]:
    return chi_scan(rank_bound, degree_bound, r_max, g).violations
