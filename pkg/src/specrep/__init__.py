"""Spectral representations of sets: irredundance, decomposition, and friends."""

from .errors import (
    CapExceeded,
    ConsistencyError,
    InputError,
    NotAntichain,
    NotARepresentation,
    SpecrepError,
)
from .setsystems import ContextTriple, PointFamily
from .topology import SpecSpace, Topology
from .engine import RepresentationReport, UniqueMinimalAnalysis
from .rings import FiniteRing, RingIdeal
from .zrdesk import OverringSpec, PoolSweepReport, PrimePool

__all__ = [
    "CapExceeded",
    "ConsistencyError",
    "ContextTriple",
    "FiniteRing",
    "InputError",
    "NotAntichain",
    "NotARepresentation",
    "OverringSpec",
    "PointFamily",
    "PoolSweepReport",
    "PrimePool",
    "RepresentationReport",
    "RingIdeal",
    "SpecSpace",
    "SpecrepError",
    "Topology",
    "UniqueMinimalAnalysis",
]

__version__ = "0.1.0"
