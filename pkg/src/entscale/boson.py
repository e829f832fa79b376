"""Massive harmonic chain: coupled oscillators with dispersion
omega_k^2 = m^2 + 4 sin^2(k/2).

The ground state is Gaussian, so all block entropies follow from the
position and momentum correlation matrices restricted to the block,
through the symplectic eigenvalues mu_j >= 1/2 of their product.  The
correlation length is 1/m in lattice units for m << 1.

Open chains use fixed (Dirichlet) ends and a sine-mode expansion, which
also removes the zero mode; periodic chains use plain momentum sums, so a
strictly positive mass is required and masses at or below 1e-8 are refused
outright.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la

from .errors import DomainError, SolverConsistencyError, ZeroModeError

__all__ = [
    "BosonParams",
    "SymplecticSpectrum",
    "boson_correlators",
    "chain_correlators",
    "symplectic_spectrum",
    "boson_entropy",
    "block_entropy",
]

MASS_FLOOR = 1e-8


@dataclass(frozen=True)
class BosonParams:
    """Oscillator chain parameters: gap mass m > 0, N >= 2 sites, bc."""

    mass: float
    n_sites: int
    bc: str = "open"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mass) and self.mass > 0.0):
            raise DomainError(f"mass must be positive and finite, got {self.mass}")
        if self.mass <= MASS_FLOOR:
            raise ZeroModeError(
                f"mass {self.mass} is at or below {MASS_FLOOR}; the zero mode makes "
                "correlators diverge, raise the mass"
            )
        if not (isinstance(self.n_sites, int) and self.n_sites >= 2):
            raise DomainError(f"chain needs at least 2 sites, got {self.n_sites}")
        if self.bc not in ("periodic", "open"):
            raise DomainError(f"boundary condition must be 'periodic' or 'open', got {self.bc!r}")


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues mu_j of a block, clamped to mu >= 1/2."""

    mus: np.ndarray

    def __post_init__(self) -> None:
        mus = np.asarray(self.mus, dtype=float)
        if mus.ndim != 1 or mus.size == 0:
            raise DomainError("symplectic spectrum must be a nonempty 1d array")
        if np.any(mus < 0.5 - 1e-6):
            raise SolverConsistencyError(
                f"symplectic eigenvalue {mus.min()} violates the uncertainty bound 1/2; "
                "the correlators feeding this spectrum are corrupt"
            )
        object.__setattr__(self, "mus", np.maximum(mus, 0.5))


def chain_correlators(params: BosonParams) -> tuple[np.ndarray, np.ndarray]:
    """Full-chain ground state correlators <x_m x_n> and <p_m p_n>."""
    n = params.n_sites
    m = params.mass
    if params.bc == "open":
        sites = np.arange(1, n + 1)
        modes = np.arange(1, n + 1)
        smat = np.sqrt(2.0 / (n + 1)) * np.sin(np.pi * np.outer(sites, modes) / (n + 1))
        omega = np.sqrt(m * m + 4.0 * np.sin(np.pi * modes / (2.0 * (n + 1))) ** 2)
        x = (smat / (2.0 * omega)) @ smat.T
        p = (smat * (omega / 2.0)) @ smat.T
        return x, p
    k = 2.0 * np.pi * np.arange(n) / n
    omega = np.sqrt(m * m + 4.0 * np.sin(k / 2.0) ** 2)
    dist = np.arange(n)
    gx = np.array([np.mean(np.cos(k * d) / (2.0 * omega)) for d in dist])
    gp = np.array([np.mean(np.cos(k * d) * omega / 2.0) for d in dist])
    idx = np.abs(np.subtract.outer(dist, dist))
    return gx[idx], gp[idx]


def boson_correlators(
    params: BosonParams,
    block: np.ndarray | slice | None = None,
    full: tuple[np.ndarray, np.ndarray] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Correlator matrices restricted to a block of sites.

    ``block`` is an index array (0-based sites) or a slice; None means the
    whole chain.  ``full`` lets sweeps reuse the chain-level matrices.
    """
    x, p = chain_correlators(params) if full is None else full
    if block is None:
        return x, p
    idx = np.arange(params.n_sites)[block] if isinstance(block, slice) else np.asarray(block, dtype=int)
    if idx.size == 0:
        raise DomainError("block must contain at least one site")
    if idx.min() < 0 or idx.max() >= params.n_sites:
        raise DomainError(f"block sites must lie in [0, {params.n_sites}), got {idx.min()}..{idx.max()}")
    return x[np.ix_(idx, idx)], p[np.ix_(idx, idx)]


def symplectic_spectrum(x_block: np.ndarray, p_block: np.ndarray) -> SymplecticSpectrum:
    """Symplectic eigenvalues: spectrum of the positive square root of X P.

    Computed stably as the eigenvalues of L^T P L with X = L L^T, which is
    similar to X P and symmetric positive definite.
    """
    x_block = np.asarray(x_block, dtype=float)
    p_block = np.asarray(p_block, dtype=float)
    if x_block.shape != p_block.shape or x_block.ndim != 2:
        raise DomainError("correlator blocks must be square matrices of equal shape")
    try:
        chol = la.cholesky(x_block, lower=True)
    except la.LinAlgError as exc:
        raise SolverConsistencyError(f"position correlator block is not positive definite: {exc}") from exc
    mu_sq = la.eigvalsh(chol.T @ p_block @ chol)
    mu_sq = np.maximum(mu_sq, 0.0)
    return SymplecticSpectrum(np.sqrt(mu_sq))


def boson_entropy(spectrum: SymplecticSpectrum) -> float:
    """Block entropy sum_j [(mu+1/2) ln(mu+1/2) - (mu-1/2) ln(mu-1/2)]."""
    mu = spectrum.mus
    plus = mu + 0.5
    minus = mu - 0.5
    ent = plus * np.log(plus)
    mask = minus > 0.0
    ent[mask] -= minus[mask] * np.log(minus[mask])
    return float(np.sum(ent))


def block_entropy(
    params: BosonParams,
    block: np.ndarray | slice,
    full: tuple[np.ndarray, np.ndarray] | None = None,
) -> float:
    """Entanglement entropy of a block of oscillator sites."""
    x_block, p_block = boson_correlators(params, block, full)
    return boson_entropy(symplectic_spectrum(x_block, p_block))
