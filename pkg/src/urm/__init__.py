"""Uniquely resolvable multisets: constructions, resolution, bounds and puzzles."""
from .bounds import bounds_report, exact_value, lower_bound, upper_bound
from .constructions import ConstructedInstance, best_construction
from .core import (
    CanonicalPartition,
    Multiset,
    Partition,
    ResolutionReport,
    Status,
    enumerate_resolutions,
    is_uniquely_resolvable,
)
from .errors import (
    CapacityError,
    DomainError,
    InconsistentPuzzleError,
    MalformedInputError,
    RegimeError,
    URMError,
)

__all__ = [
    "CanonicalPartition",
    "CapacityError",
    "ConstructedInstance",
    "DomainError",
    "InconsistentPuzzleError",
    "MalformedInputError",
    "Multiset",
    "Partition",
    "RegimeError",
    "ResolutionReport",
    "Status",
    "URMError",
    "best_construction",
    "bounds_report",
    "enumerate_resolutions",
    "exact_value",
    "is_uniquely_resolvable",
    "lower_bound",
    "upper_bound",
]
