"""Profit division in cooperative TU-games.

Vickrey payments and their budget-balancing variants, weighted egalitarian
allocations, and exact checks of how the two relate on convex games.
"""

from coopshare.errors import (
    CoopShareError,
    DimensionError,
    DomainError,
    EmptyCore,
    Infeasible,
    InfeasibleScaling,
    InvalidCoalition,
    MalformedInput,
    NonConvexTieStructure,
    TooLarge,
    UnboundedLexTarget,
    ZeroWeight,
)
from coopshare.game import ExchangeInstance, TuGame, coalition, members

__all__ = [
    "CoopShareError",
    "DimensionError",
    "DomainError",
    "EmptyCore",
    "ExchangeInstance",
    "Infeasible",
    "InfeasibleScaling",
    "InvalidCoalition",
    "MalformedInput",
    "NonConvexTieStructure",
    "TooLarge",
    "TuGame",
    "UnboundedLexTarget",
    "ZeroWeight",
    "coalition",
    "members",
]
