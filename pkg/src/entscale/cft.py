"""Closed-form entanglement entropy laws of 1+1 dimensional critical systems.

Everything here is a pure function of the geometry, the central charge c,
the short-distance cutoff a, and non-universal constants.  Entropies are in
nats (natural logarithm throughout) and the velocity of excitations is set
to one, so inverse temperature beta and system size L share length units.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import CutoffViolation, DomainError, IntervalSetError

__all__ = [
    "ScalingConstants",
    "IntervalSet",
    "InfiniteLine",
    "Thermal",
    "PeriodicFinite",
    "SemiInfiniteBoundary",
    "BoundaryThermal",
    "BoundaryFinite",
    "minimal_model_central_charge",
    "twist_dimension",
    "renyi_trace_interval",
    "entropy_interval",
    "entropy_thermal",
    "entropy_periodic",
    "entropy_boundary",
    "entropy_boundary_thermal",
    "entropy_boundary_finite",
    "entropy_intervals",
    "entropy_off_critical",
    "geometry_entropy",
]


def _check_central_charge(c: float) -> None:
    if not (c > 0.0 and math.isfinite(c)):
        raise DomainError(f"central charge must be positive and finite, got {c}")


def _check_cutoff(a: float) -> None:
    if not (a > 0.0 and math.isfinite(a)):
        raise DomainError(f"cutoff must be positive and finite, got {a}")


def _log_sinh(x: float) -> float:
    """log(sinh(x)) for x > 0 without overflow at large x."""
    if x <= 0.0:
        raise DomainError(f"log-sinh argument must be positive, got {x}")
    if x > 20.0:
        return x - math.log(2.0) + math.log1p(-math.exp(-2.0 * x))
    return math.log(math.sinh(x))


@dataclass(frozen=True)
class ScalingConstants:
    """Non-universal constants of the entropy laws.

    k1 is the additive constant of the bulk laws, k1b its boundary
    counterpart, and cn maps the Renyi index n to the prefactor of the
    power law for Tr rho_A^n.  Unset fields default to 0 (respectively 1
    for cn); ``defaulted`` reports whether any default was used, so result
    records can carry that flag.
    """

    k1: float | None = None
    k1b: float | None = None
    cn: Mapping[int, float] | None = None

    def __post_init__(self) -> None:
        if self.cn is not None:
            one = self.cn.get(1, 1.0)
            if one != 1.0:
                raise DomainError(f"cn(1) must be 1 (Tr rho = 1), got {one}")
            for n, value in self.cn.items():
                if not value > 0.0:
                    raise DomainError(f"cn({n}) must be positive, got {value}")

    @property
    def defaulted(self) -> bool:
        return self.k1 is None or self.k1b is None or self.cn is None

    @property
    def bulk_offset(self) -> float:
        return 0.0 if self.k1 is None else self.k1

    @property
    def boundary_offset(self) -> float:
        return 0.0 if self.k1b is None else self.k1b

    def renyi_coefficient(self, n: float) -> float:
        if self.cn is None:
            return 1.0
        if n == 1:
            return 1.0
        return float(self.cn.get(n, 1.0))


DEFAULT_CONSTANTS = ScalingConstants()


@dataclass(frozen=True)
class IntervalSet:
    """Ordered, strictly disjoint intervals (u_k, v_k) forming subsystem A."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if not self.intervals:
            raise IntervalSetError("interval set must be nonempty")
        object.__setattr__(
            self, "intervals", tuple((float(u), float(v)) for u, v in self.intervals)
        )
        for i, (u, v) in enumerate(self.intervals):
            if not (math.isfinite(u) and math.isfinite(v)):
                raise IntervalSetError(f"interval {i} has non-finite endpoint ({u}, {v})")
            if not u < v:
                raise IntervalSetError(f"interval {i} must have u < v, got ({u}, {v})")
        for i in range(len(self.intervals) - 1):
            v_left = self.intervals[i][1]
            u_right = self.intervals[i + 1][0]
            if v_left > u_right:
                raise IntervalSetError(
                    f"intervals {i} and {i + 1} overlap: "
                    f"v_{i} = {v_left} > u_{i + 1} = {u_right}"
                )
            if v_left == u_right:
                raise IntervalSetError(
                    f"intervals {i} and {i + 1} touch at x = {v_left}; "
                    "the multi-interval entropy diverges for touching intervals"
                )

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def lengths(self) -> tuple[float, ...]:
        return tuple(v - u for u, v in self.intervals)

    @property
    def gaps(self) -> tuple[float, ...]:
        return tuple(
            self.intervals[i + 1][0] - self.intervals[i][1]
            for i in range(len(self.intervals) - 1)
        )


# --- geometries -----------------------------------------------------------


@dataclass(frozen=True)
class InfiniteLine:
    pass


@dataclass(frozen=True)
class Thermal:
    beta: float

    def __post_init__(self) -> None:
        if not self.beta > 0.0:
            raise DomainError(f"inverse temperature must be positive, got {self.beta}")


@dataclass(frozen=True)
class PeriodicFinite:
    length: float

    def __post_init__(self) -> None:
        if not self.length > 0.0:
            raise DomainError(f"system length must be positive, got {self.length}")


@dataclass(frozen=True)
class SemiInfiniteBoundary:
    pass


@dataclass(frozen=True)
class BoundaryThermal:
    beta: float

    def __post_init__(self) -> None:
        if not self.beta > 0.0:
            raise DomainError(f"inverse temperature must be positive, got {self.beta}")


@dataclass(frozen=True)
class BoundaryFinite:
    length: float

    def __post_init__(self) -> None:
        if not self.length > 0.0:
            raise DomainError(f"system length must be positive, got {self.length}")


Geometry = (
    InfiniteLine
    | Thermal
    | PeriodicFinite
    | SemiInfiniteBoundary
    | BoundaryThermal
    | BoundaryFinite
)


# --- operations -----------------------------------------------------------


def minimal_model_central_charge(m: int) -> float:
    """Central charge 1 - 6/(m(m+1)) of the m-th unitary minimal model."""
    if m < 3:
        raise DomainError(f"minimal model index must be >= 3, got {m}")
    return 1.0 - 6.0 / (m * (m + 1.0))


def twist_dimension(n: float, c: float) -> float:
    """Scaling dimension (c/24)(1 - 1/n^2) of the n-sheet branch twist field."""
    _check_central_charge(c)
    if not n > 0.0:
        raise DomainError(f"Renyi index must be positive, got {n}")
    return (c / 24.0) * (1.0 - 1.0 / (n * n))


def _require_length(ell: float, a: float, *, factor: float = 1.0) -> None:
    if not math.isfinite(ell) or ell <= 0.0:
        raise DomainError(f"length must be positive and finite, got {ell}")
    if factor * ell < a:
        raise CutoffViolation(
            f"length {ell} falls below the cutoff a = {a}; the continuum "
            "formulas are meaningless there"
        )


def renyi_trace_interval(
    n: float,
    ell: float,
    a: float,
    c: float,
    consts: ScalingConstants = DEFAULT_CONSTANTS,
) -> float:
    """Tr rho_A^n = c_n (ell/a)^(-(c/6)(n - 1/n)) for one interval on the line.

    The index n is an integer for the replica construction, but the power
    law continues to real n > 0 and the n -> 1 derivative of that
    continuation gives the entropy, so real n is accepted.
    """
    _check_central_charge(c)
    _check_cutoff(a)
    if not n > 0.0:
        raise DomainError(f"Renyi index must be positive, got {n}")
    _require_length(ell, a)
    exponent = -(c / 6.0) * (n - 1.0 / n)
    return consts.renyi_coefficient(n) * (ell / a) ** exponent


def entropy_interval(
    ell: float,
    a: float,
    c: float,
    consts: ScalingConstants = DEFAULT_CONSTANTS,
) -> float:
    """S = (c/3) ln(ell/a) + k1 for one interval in an infinite system at T=0."""
    _check_central_charge(c)
    _check_cutoff(a)
    _require_length(ell, a)
    return (c / 3.0) * math.log(ell / a) + consts.bulk_offset


def entropy_thermal(
    ell: float,
    beta: float,
    a: float,
    c: float,
    consts: ScalingConstants = DEFAULT_CONSTANTS,
) -> float:
    """S = (c/3) ln((beta/(pi a)) sinh(pi ell/beta)) + k1 at temperature 1/beta."""
    _check_central_charge(c)
    _check_cutoff(a)
    if not beta > 0.0:
        raise DomainError(f"inverse temperature must be positive, got {beta}")
    _require_length(ell, a)
    return (c / 3.0) * (math.log(beta / (math.pi * a)) + _log_sinh(math.pi * ell / beta)) + consts.bulk_offset


def entropy_periodic(
    ell: float,
    length: float,
    a: float,
    c: float,
    consts: ScalingConstants = DEFAULT_CONSTANTS,
) -> float:
    """S = (c/3) ln((L/(pi a)) sin(pi ell/L)) + k1 for a periodic system of size L."""
    _check_central_charge(c)
    _check_cutoff(a)
    _require_length(ell, a)
    if ell >= length:
        raise DomainError(f"interval length {ell} must be smaller than the system size {length}")
    return (c / 3.0) * math.log((length / (math.pi * a)) * math.sin(math.pi * ell / length)) + consts.bulk_offset


def entropy_boundary(
    ell: float,
    a: float,
    c: float,
    consts: ScalingConstants = DEFAULT_CONSTANTS,
) -> float:
    """S = (c/6) ln(2 ell/a) + k1b for an interval ending on a boundary."""
    _check_central_charge(c)
    _check_cutoff(a)
    _require_length(ell, a, factor=2.0)
    return (c / 6.0) * math.log(2.0 * ell / a) + consts.boundary_offset


def entropy_boundary_thermal(
    ell: float,
    beta: float,
    a: float,
    c: float,
    consts: ScalingConstants = DEFAULT_CONSTANTS,
) -> float:
    """S = (c/6) ln((beta/(pi a)) sinh(2 pi ell/beta)) + k1b.

    Note the doubled argument of sinh relative to the bulk thermal law.
    """
    _check_central_charge(c)
    _check_cutoff(a)
    if not beta > 0.0:
        raise DomainError(f"inverse temperature must be positive, got {beta}")
    _require_length(ell, a, factor=2.0)
    return (c / 6.0) * (math.log(beta / (math.pi * a)) + _log_sinh(2.0 * math.pi * ell / beta)) + consts.boundary_offset


def entropy_boundary_finite(
    ell: float,
    length: float,
    a: float,
    c: float,
    consts: ScalingConstants = DEFAULT_CONSTANTS,
) -> float:
    """S = (c/6) ln((2L/(pi a)) sin(pi ell/L)) + k1b for a finite open system."""
    _check_central_charge(c)
    _check_cutoff(a)
    _require_length(ell, a, factor=2.0)
    if ell >= length:
        raise DomainError(f"interval length {ell} must be smaller than the system size {length}")
    return (c / 6.0) * math.log((2.0 * length / (math.pi * a)) * math.sin(math.pi * ell / length)) + consts.boundary_offset


def entropy_intervals(
    intervals: IntervalSet | Sequence[tuple[float, float]],
    a: float,
    c: float,
    consts: ScalingConstants = DEFAULT_CONSTANTS,
) -> float:
    """Entropy of several disjoint intervals in an infinite system at T=0.

    S = (c/3) [ sum over all endpoint pairs of ln(|v_k - u_j|/a)
                - sum_{j<k} ln((u_k - u_j)/a) - sum_{j<k} ln((v_k - v_j)/a) ]
        + N k1

    The first sum runs over all (j, k); for j > k the difference u_j - v_k
    is the gap between intervals k and j, and those gap terms are what make
    far separated intervals decouple into independent single-interval
    contributions (and make the result diverge for touching intervals).
    For N = 1 this reduces term by term to ``entropy_interval``.
    """
    if not isinstance(intervals, IntervalSet):
        intervals = IntervalSet(tuple(intervals))
    _check_central_charge(c)
    _check_cutoff(a)
    for i, ell in enumerate(intervals.lengths):
        if ell < a:
            raise CutoffViolation(f"interval {i} has length {ell} below the cutoff a = {a}")
    for i, gap in enumerate(intervals.gaps):
        if gap < a:
            raise CutoffViolation(
                f"gap between intervals {i} and {i + 1} is {gap}, below the cutoff a = {a}"
            )
    pts = intervals.intervals
    n = len(pts)
    acc = 0.0
    for j in range(n):
        for k in range(n):
            acc += math.log(abs(pts[k][1] - pts[j][0]) / a)
    for j in range(n):
        for k in range(j + 1, n):
            acc -= math.log((pts[k][0] - pts[j][0]) / a)
            acc -= math.log((pts[k][1] - pts[j][1]) / a)
    return (c / 3.0) * acc + n * consts.bulk_offset


def entropy_off_critical(
    xi: float,
    boundary_points: int,
    a: float,
    c: float,
) -> float:
    """S = A (c/6) ln(xi/a) near (not at) the critical point.

    A counts the boundary points shared by the subsystem and its
    complement.  Valid only for xi well above the cutoff: xi <= 10 a is
    rejected, and xi < 100 a draws a warning since corrections to the pure
    logarithm are then not negligible.
    """
    _check_central_charge(c)
    _check_cutoff(a)
    if not (isinstance(boundary_points, int) and boundary_points >= 1):
        raise DomainError(f"boundary point count must be a positive integer, got {boundary_points}")
    if not (math.isfinite(xi) and xi > 0.0):
        raise DomainError(f"correlation length must be positive and finite, got {xi}")
    if xi <= a:
        raise DomainError(f"correlation length {xi} is at or below the cutoff a = {a}")
    if xi <= 10.0 * a:
        raise DomainError(
            f"correlation length {xi} is within 10 cutoff units of a = {a}; "
            "the off-critical law needs xi >> a"
        )
    if xi < 100.0 * a:
        warnings.warn(
            f"correlation length {xi} is below 100 a = {100.0 * a}; "
            "the off-critical law carries sizable corrections here",
            stacklevel=2,
        )
    return boundary_points * (c / 6.0) * math.log(xi / a)


def geometry_entropy(
    geometry: Geometry,
    ell: float,
    a: float,
    c: float,
    consts: ScalingConstants = DEFAULT_CONSTANTS,
) -> float:
    """Dispatch the single-interval entropy law matching ``geometry``."""
    if isinstance(geometry, InfiniteLine):
        return entropy_interval(ell, a, c, consts)
    if isinstance(geometry, Thermal):
        return entropy_thermal(ell, geometry.beta, a, c, consts)
    if isinstance(geometry, PeriodicFinite):
        _require_interval_in_system(ell, geometry.length)
        return entropy_periodic(ell, geometry.length, a, c, consts)
    if isinstance(geometry, SemiInfiniteBoundary):
        return entropy_boundary(ell, a, c, consts)
    if isinstance(geometry, BoundaryThermal):
        return entropy_boundary_thermal(ell, geometry.beta, a, c, consts)
    if isinstance(geometry, BoundaryFinite):
        _require_interval_in_system(ell, geometry.length)
        return entropy_boundary_finite(ell, geometry.length, a, c, consts)
    raise DomainError(f"unknown geometry {geometry!r}")


def _require_interval_in_system(ell: float, length: float) -> None:
    if not 0.0 < ell < length:
        raise DomainError(
            f"interval of length {ell} does not fit inside a system of size {length}"
        )
