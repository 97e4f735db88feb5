"""Lattice congruences of the weak order on permutations: classes, quotient graphs and Algorithm J."""

from .errors import (
    BudgetExceededError,
    InvalidInputError,
    NonEssentialError,
    NotWellBehavedError,
    RailCollapseError,
    VerificationError,
)
from .fences import (
    ArcDiagram,
    Congruence,
    Fence,
    downset_closure,
    enumerate_essential_congruences,
    forcing_less,
    from_diagram,
    reduced_diagram,
    restriction,
)
from .perm import identity, join, meet, parse_perm, weak_leq

__all__ = [
    "ArcDiagram",
    "BudgetExceededError",
    "Congruence",
    "Fence",
    "InvalidInputError",
    "NonEssentialError",
    "NotWellBehavedError",
    "RailCollapseError",
    "VerificationError",
    "downset_closure",
    "enumerate_essential_congruences",
    "forcing_less",
    "from_diagram",
    "identity",
    "join",
    "meet",
    "parse_perm",
    "reduced_diagram",
    "restriction",
    "weak_leq",
]
