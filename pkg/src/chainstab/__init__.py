"""Stability combinatorics of holomorphic chains from numerical invariants.

Everything is exact: slopes, margins and stability parameters are
:class:`fractions.Fraction` values.
"""

from chainstab.chain_core import (
    ChainInvariants,
    alpha_higgs,
    alpha_slope,
    as_alpha,
    dualize,
    is_above_alpha_higgs,
    twist,
)
from chainstab.conditions import (
    ConditionReport,
    StandardSubchain,
    admissible,
    check_c3_prime,
    check_conditions,
    standard_subchains,
)
from chainstab.errors import EnumerationOverflowError, InputError, PreconditionError

__all__ = [
    "ChainInvariants",
    "ConditionReport",
    "EnumerationOverflowError",
    "InputError",
    "PreconditionError",
    "StandardSubchain",
    "admissible",
    "alpha_higgs",
    "alpha_slope",
    "as_alpha",
    "check_c3_prime",
    "check_conditions",
    "dualize",
    "is_above_alpha_higgs",
    "standard_subchains",
    "twist",
]

__version__ = "0.1.0"
