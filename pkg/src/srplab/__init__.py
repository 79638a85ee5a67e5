"""Strong Rees property computations for numerical semigroup rings."""

from .semigroup import NumericalSemigroup, parse_generators
from .ideals import Monomial, StaircaseIdeal, maximal_ideal, normalize, power_of_max, mu
from .srp import Bounds, Reason, SrpVerdict, Status, srp_status, srp_threshold

__all__ = [
    "Bounds",
    "Monomial",
    "NumericalSemigroup",
    "Reason",
    "SrpVerdict",
    "StaircaseIdeal",
    "Status",
    "maximal_ideal",
    "mu",
    "normalize",
    "parse_generators",
    "power_of_max",
    "srp_status",
    "srp_threshold",
]
