"""Entanglement entropy scaling in one-dimensional quantum systems.

Closed-form conformal scaling laws, the conformal-map identities behind
them, exact lattice solvers (transverse-field Ising chain, massive
harmonic chain), and the fits that extract the central charge from them.
"""

__version__ = "0.1.0"

from . import analysis, boson, cft, conformal, errors, ising, tables
from .cft import (
    IntervalSet,
    ScalingConstants,
    entropy_boundary,
    entropy_boundary_finite,
    entropy_boundary_thermal,
    entropy_interval,
    entropy_intervals,
    entropy_off_critical,
    entropy_periodic,
    entropy_thermal,
    minimal_model_central_charge,
    renyi_trace_interval,
    twist_dimension,
)
from .ising import BlockSpec, TFIParams, correlation_length
from .boson import BosonParams

__all__ = [
    "__version__",
    "analysis",
    "boson",
    "cft",
    "conformal",
    "errors",
    "ising",
    "tables",
    "IntervalSet",
    "ScalingConstants",
    "entropy_boundary",
    "entropy_boundary_finite",
    "entropy_boundary_thermal",
    "entropy_interval",
    "entropy_intervals",
    "entropy_off_critical",
    "entropy_periodic",
    "entropy_thermal",
    "minimal_model_central_charge",
    "renyi_trace_interval",
    "twist_dimension",
    "BlockSpec",
    "TFIParams",
    "BosonParams",
    "correlation_length",
]
