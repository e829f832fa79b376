"""Fits and sweeps turning solver output into scaling statements.

Central-charge extraction is ordinary least squares of the entropy against
the model-specific logarithmic abscissa; the slope is converted to c by
the model prefactor (c/3 bulk, c/6 boundary, A c/6 off-critical).  No
error model is assumed.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from . import boson as boson_mod
from . import ising as ising_mod
from .errors import DomainError, InsufficientDataError

__all__ = [
    "ScalingDataset",
    "FitResult",
    "FIT_MODELS",
    "fit_central_charge",
    "renyi_exponent_fit",
    "off_critical_slope",
    "crossover_curve",
    "figure_sweep",
    "critical_block_sweep",
    "off_critical_sweep",
    "boson_mass_sweep",
]

FIT_MODELS = ("bulk_periodic", "boundary_open", "single_interval", "off_critical")

POOR_FIT_RMS = 0.05

# Lattice fit windows; blocks shorter than MIN_BLOCK sites or closer than
# HALF_MARGIN sites to the half-system point carry corrections the scaling
# laws ignore.
MIN_BLOCK = 8
HALF_MARGIN = 8


@dataclass(frozen=True)
class ScalingDataset:
    """Entropy against a geometric abscissa, with enough metadata to fit it.

    ``abscissa`` is the raw quantity (block length for critical scaling,
    correlation length off criticality, coupling for the lambda curve) and
    must be strictly increasing.
    """

    abscissa: np.ndarray
    entropy: np.ndarray
    model: str
    system_size: float | None = None
    boundary_points: int | None = None
    label: str = ""
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        x = np.asarray(self.abscissa, dtype=float)
        s = np.asarray(self.entropy, dtype=float)
        if x.ndim != 1 or s.shape != x.shape:
            raise DomainError("abscissa and entropy must be 1d arrays of equal length")
        if np.any(np.diff(x) <= 0.0):
            raise DomainError("abscissae must be strictly increasing")
        object.__setattr__(self, "abscissa", x)
        object.__setattr__(self, "entropy", s)

    def __len__(self) -> int:
        return int(self.abscissa.size)

    def restricted(self, lo: float, hi: float) -> "ScalingDataset":
        mask = (self.abscissa >= lo) & (self.abscissa <= hi)
        if int(mask.sum()) < 3:
            raise InsufficientDataError(
                f"window [{lo}, {hi}] keeps {int(mask.sum())} of {len(self)} points; need >= 3"
            )
        return replace(self, abscissa=self.abscissa[mask], entropy=self.entropy[mask])


@dataclass(frozen=True)
class FitResult:
    """Extracted central charge with intercept and residual diagnostics."""

    c_est: float
    intercept: float
    rms_residual: float
    n_points: int
    model: str
    poor_fit: bool = False


def _lstsq_line(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    design = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    rms = float(np.sqrt(np.mean(resid**2)))
    return float(coef[0]), float(coef[1]), rms


def _model_abscissa(ds: ScalingDataset, model: str) -> tuple[np.ndarray, float]:
    """Logarithmic abscissa and slope-to-c conversion factor for a model."""
    x = ds.abscissa
    if model == "bulk_periodic":
        if ds.system_size is None:
            raise DomainError("bulk_periodic fit needs the system size")
        size = float(ds.system_size)
        return np.log((size / math.pi) * np.sin(math.pi * x / size)), 3.0
    if model == "boundary_open":
        if ds.system_size is None:
            raise DomainError("boundary_open fit needs the system size")
        size = float(ds.system_size)
        return np.log((2.0 * size / math.pi) * np.sin(math.pi * x / size)), 6.0
    if model == "single_interval":
        return np.log(x), 3.0
    if model == "off_critical":
        if not ds.boundary_points:
            raise DomainError("off_critical fit needs the boundary point count")
        return np.log(x), 6.0 / ds.boundary_points
    raise DomainError(f"unknown fit model {model!r}; pick one of {FIT_MODELS}")


def _default_lattice_window(ds: ScalingDataset, model: str) -> ScalingDataset:
    if model not in ("bulk_periodic", "boundary_open") or ds.system_size is None:
        return ds
    lo = float(MIN_BLOCK)
    hi = float(ds.system_size) / 2.0 - HALF_MARGIN
    mask = (ds.abscissa >= lo) & (ds.abscissa <= hi)
    if int(mask.sum()) >= 3:
        return replace(ds, abscissa=ds.abscissa[mask], entropy=ds.entropy[mask])
    return ds


def fit_central_charge(
    ds: ScalingDataset,
    model: str | None = None,
    window: tuple[float, float] | None = None,
) -> FitResult:
    """Least-squares central charge from an entropy scaling dataset.

    ``window`` restricts the raw abscissa; without it, lattice models drop
    blocks below MIN_BLOCK sites and within HALF_MARGIN of the half-system
    point.  A root-mean-square residual above 0.05 flags (but does not
    reject) the fit.
    """
    model = model or ds.model
    if window is not None:
        ds = ds.restricted(*window)
    else:
        ds = _default_lattice_window(ds, model)
    if len(ds) < 3:
        raise InsufficientDataError(f"need at least 3 points to fit, got {len(ds)}")
    x, factor = _model_abscissa(ds, model)
    slope, intercept, rms = _lstsq_line(x, ds.entropy)
    poor = rms > POOR_FIT_RMS
    if poor:
        warnings.warn(
            f"poor fit: rms residual {rms:.3g} exceeds {POOR_FIT_RMS}", stacklevel=2
        )
    return FitResult(
        c_est=factor * slope,
        intercept=intercept,
        rms_residual=rms,
        n_points=len(ds),
        model=model,
        poor_fit=poor,
    )


def renyi_exponent_fit(chords: np.ndarray, traces: np.ndarray) -> float:
    """Power-law exponent e of Tr rho_A^n ~ chord^(-e) from a critical sweep."""
    chords = np.asarray(chords, dtype=float)
    traces = np.asarray(traces, dtype=float)
    if chords.size < 3:
        raise InsufficientDataError(f"need at least 3 points, got {chords.size}")
    if np.any(traces <= 0.0):
        raise DomainError("Renyi traces must be positive")
    slope, _, _ = _lstsq_line(np.log(chords), np.log(traces))
    return -slope


def off_critical_slope(
    ds: ScalingDataset,
    window: tuple[float, float] | None = None,
) -> float:
    """Slope of S against ln(xi) over a correlation length window.

    The default window is [10, N/10]: below it the law competes with the
    cutoff, above it xi is no longer small compared to the block.
    """
    if window is None:
        hi = float(ds.system_size) / 10.0 if ds.system_size else float(ds.abscissa.max())
        window = (10.0, hi)
    ds = ds.restricted(*window)
    slope, _, _ = _lstsq_line(np.log(ds.abscissa), ds.entropy)
    return slope


# --- sweeps built on the lattice solvers -----------------------------------


def critical_block_sweep(
    n_sites: int,
    lengths: np.ndarray,
    lam: float = 1.0,
    bc: str = "periodic",
    renyi: tuple[int, ...] = (),
) -> tuple[ScalingDataset, dict[int, np.ndarray]]:
    """Block entropy (and optional Renyi traces) against block length."""
    params = ising_mod.TFIParams(lam=lam, n_sites=n_sites, bc=bc)
    cov = ising_mod.ground_covariance(params)
    lengths = np.asarray(lengths, dtype=int)
    entropies = np.empty(lengths.size)
    traces: dict[int, np.ndarray] = {n: np.empty(lengths.size) for n in renyi}
    for i, ell in enumerate(lengths):
        block = ising_mod.BlockSpec(start=0, length=int(ell))
        spec = ising_mod.fermion_spectrum(
            ising_mod.block_majorana_correlations(params, block, cov)
        )
        entropies[i] = ising_mod.ff_entropy(spec)
        for n in renyi:
            traces[n][i] = ising_mod.ff_renyi(spec, n)
    ds = ScalingDataset(
        abscissa=lengths.astype(float),
        entropy=entropies,
        model="bulk_periodic" if bc == "periodic" else "boundary_open",
        system_size=float(n_sites),
        boundary_points=2 if bc == "periodic" else 1,
        label=f"ising lam={lam} N={n_sites} {bc}",
    )
    return ds, traces


def off_critical_sweep(
    n_sites: int,
    xis: np.ndarray,
    branches: tuple[str, ...] = ("below", "above"),
) -> ScalingDataset:
    """Half-block entropy of an open chain against correlation length.

    For each xi the couplings lam = 1 -+ 1/xi are solved and the entropies
    averaged over the requested branches.  Averaging the two sides of the
    transition cancels the leading finite-xi correction to the logarithmic
    law, which has opposite sign on the two branches; a single branch needs
    far larger xi for the same accuracy.
    """
    xis = np.asarray(xis, dtype=float)
    half = n_sites // 2
    entropies = np.empty(xis.size)
    for i, xi in enumerate(xis):
        values = []
        for branch in branches:
            lam = 1.0 - 1.0 / xi if branch == "below" else 1.0 + 1.0 / xi
            params = ising_mod.TFIParams(lam=lam, n_sites=n_sites, bc="open")
            values.append(
                ising_mod.block_entropy(params, ising_mod.BlockSpec(0, half))
            )
        entropies[i] = float(np.mean(values))
    return ScalingDataset(
        abscissa=xis,
        entropy=entropies,
        model="off_critical",
        system_size=float(n_sites),
        boundary_points=1,
        label=f"ising open half-block N={n_sites} branches={'+'.join(branches)}",
    )


def boson_mass_sweep(
    n_sites: int,
    xis: np.ndarray,
    boundary_points: int = 1,
) -> ScalingDataset:
    """Oscillator-chain block entropy against xi = 1/mass.

    boundary_points = 1 is the half split of an open chain; 2 is an
    interior block (half the sites, centered) of a periodic chain.
    """
    if boundary_points not in (1, 2):
        raise DomainError("boundary_points must be 1 (open half) or 2 (periodic interior)")
    xis = np.asarray(xis, dtype=float)
    entropies = np.empty(xis.size)
    for i, xi in enumerate(xis):
        mass = 1.0 / xi
        if boundary_points == 1:
            params = boson_mod.BosonParams(mass=mass, n_sites=n_sites, bc="open")
            sites = np.arange(n_sites // 2)
        else:
            params = boson_mod.BosonParams(mass=mass, n_sites=n_sites, bc="periodic")
            sites = np.arange(n_sites // 4, n_sites // 4 + n_sites // 2)
        entropies[i] = boson_mod.block_entropy(params, sites)
    return ScalingDataset(
        abscissa=xis,
        entropy=entropies,
        model="off_critical",
        system_size=float(n_sites),
        boundary_points=boundary_points,
        label=f"boson N={n_sites} A={boundary_points}",
    )


def crossover_curve(n_sites: int, masses: np.ndarray) -> ScalingDataset:
    """Half-split entropy of an open oscillator chain across the gap range.

    The abscissa is xi = 1/mass (ascending), spanning xi << L (the massive
    line in ln xi) through xi >> L (the size-limited critical plateau).
    """
    masses = np.asarray(masses, dtype=float)
    xis = np.sort(1.0 / masses)
    half = np.arange(n_sites // 2)
    entropies = np.empty(xis.size)
    for i, xi in enumerate(xis):
        params = boson_mod.BosonParams(mass=1.0 / xi, n_sites=n_sites, bc="open")
        entropies[i] = boson_mod.block_entropy(params, half)
    return ScalingDataset(
        abscissa=xis,
        entropy=entropies,
        model="crossover",
        system_size=float(n_sites),
        boundary_points=1,
        label=f"boson crossover N={n_sites}",
    )


def figure_sweep(
    lams: np.ndarray,
    n_sites: int,
    block_policy: str = "periodic_half",
) -> ScalingDataset:
    """Half-block entropy of the Ising chain against the coupling.

    ``periodic_half`` (default) takes half of a periodic chain, so the
    curve peaks at the critical coupling for the sizes used here;
    ``open_half`` takes half of an open chain, where the cat-state ln 2 of
    the ordered side pushes the finite-size maximum slightly above lam = 1.
    """
    if block_policy not in ("periodic_half", "open_half"):
        raise DomainError(f"unknown block policy {block_policy!r}")
    bc = "periodic" if block_policy == "periodic_half" else "open"
    lams = np.asarray(lams, dtype=float)
    half = n_sites // 2
    entropies = np.empty(lams.size)
    for i, lam in enumerate(lams):
        params = ising_mod.TFIParams(lam=float(lam), n_sites=n_sites, bc=bc)
        entropies[i] = ising_mod.block_entropy(params, ising_mod.BlockSpec(0, half))
    return ScalingDataset(
        abscissa=lams,
        entropy=entropies,
        model="lambda_curve",
        system_size=float(n_sites),
        boundary_points=2 if bc == "periodic" else 1,
        label=f"ising {block_policy} N={n_sites}",
    )
