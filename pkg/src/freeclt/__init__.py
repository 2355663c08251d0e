"""Moment-cumulant calculus and the linearized central limit operator,
in classical and free probability.

Exact layers (Q and Q[sqrt(2)]): `algebra`, `partitions`, `cumulants`,
`clt`, `special_functions`.  Floating point layer: `analytic`.  Command
line front end: `cli` (entry point ``freeclt``).
"""

__version__ = "0.1.0"

from .algebra import BETA, ONE, SQRT2, ZERO, PowerSeries, QSqrt2, two_pow_half
from .cumulants import Sequence, cumulants_to_moments, gateaux_derivative, moments_to_cumulants
from .partitions import (
    BlockProfile,
    Partition,
    SizeLimitError,
    classical_profile_count,
    count_profile,
    enumerate_partitions,
    is_noncrossing,
    kreweras_count,
)

__all__ = [
    "BETA",
    "ONE",
    "SQRT2",
    "ZERO",
    "BlockProfile",
    "Partition",
    "PowerSeries",
    "QSqrt2",
    "Sequence",
    "SizeLimitError",
    "classical_profile_count",
    "count_profile",
    "cumulants_to_moments",
    "enumerate_partitions",
    "gateaux_derivative",
    "is_noncrossing",
    "kreweras_count",
    "moments_to_cumulants",
    "two_pow_half",
]
