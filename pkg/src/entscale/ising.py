"""Transverse-field Ising chain: H = -sum_n sx_n - lam sum_n sz_n sz_{n+1}.

The chain is critical at lam = 1 with correlation length 1/|lam - 1| away
from it.  Two routes to the entanglement spectrum of a contiguous block are
implemented:

* a dense solver (sparse diagonalization of the full 2^N Hamiltonian,
  N <= 14) that serves as the oracle, and
* a free-fermion solver built on the Majorana two-point function of the
  ground state, which reaches hundreds of sites.

The fermionized periodic chain is solved in its even fermion parity sector
(the sector containing the finite-size ground state), which means
antiperiodic boundary conditions for the fermions.  None of the sign or
ordering conventions below are trusted on their own: the test suite pins
the free-fermion route to the dense oracle for every small system.

For lam > 1 the ground space becomes doubly degenerate as N grows; both
solvers then resolve the symmetric (cat) combination and flag the result,
since that state carries an extra ~ln 2 of block entropy relative to a
symmetry-broken state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
import scipy.sparse.linalg as sla

from .errors import DomainError, ResourceLimitError, SolverConsistencyError

__all__ = [
    "TFIParams",
    "BlockSpec",
    "EntanglementSpectrum",
    "FermionSpectrum",
    "GroundState",
    "MajoranaCovariance",
    "DENSE_SITE_LIMIT",
    "dense_hamiltonian",
    "dense_ground_state",
    "reduced_density_matrix",
    "entropy_from_spectrum",
    "renyi_from_spectrum",
    "ground_covariance",
    "block_majorana_correlations",
    "fermion_spectrum",
    "ff_entropy",
    "ff_renyi",
    "block_entropy",
    "block_renyi",
    "correlation_length",
]

DENSE_SITE_LIMIT = 14
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class TFIParams:
    """Chain parameters: coupling lam >= 0, N >= 2 sites, open or periodic."""

    lam: float
    n_sites: int
    bc: str = "periodic"

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lam) and self.lam >= 0.0):
            raise DomainError(f"coupling must be a nonnegative finite real, got {self.lam}")
        if not (isinstance(self.n_sites, int) and self.n_sites >= 2):
            raise DomainError(f"chain needs at least 2 sites, got {self.n_sites}")
        if self.bc not in ("periodic", "open"):
            raise DomainError(f"boundary condition must be 'periodic' or 'open', got {self.bc!r}")


@dataclass(frozen=True)
class BlockSpec:
    """Contiguous block of sites [start, start + length) inside the chain."""

    start: int
    length: int

    def __post_init__(self) -> None:
        if not (isinstance(self.start, int) and self.start >= 0):
            raise DomainError(f"block start must be a nonnegative integer, got {self.start}")
        if not (isinstance(self.length, int) and self.length >= 1):
            raise DomainError(f"block length must be a positive integer, got {self.length}")

    def validate_for(self, params: TFIParams) -> None:
        if self.length >= params.n_sites:
            raise DomainError(
                f"block length {self.length} must be smaller than the chain ({params.n_sites} sites)"
            )
        if self.start + self.length > params.n_sites:
            raise DomainError(
                f"block [{self.start}, {self.start + self.length}) does not fit in {params.n_sites} sites"
            )


@dataclass(frozen=True)
class EntanglementSpectrum:
    """Eigenvalues of a reduced density matrix, descending, summing to one."""

    probabilities: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.probabilities, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise DomainError("spectrum must be a nonempty 1d array")
        if np.any(p < -1e-12) or np.any(p > 1.0 + 1e-12):
            raise DomainError("spectrum entries must lie in [0, 1]")
        total = float(p.sum())
        if abs(total - 1.0) > 1e-10:
            raise DomainError(f"spectrum must sum to 1 within 1e-10, got {total}")
        p = np.clip(p, 0.0, 1.0)
        object.__setattr__(self, "probabilities", np.sort(p)[::-1])


@dataclass(frozen=True)
class FermionSpectrum:
    """Paired Majorana correlation eigenvalues nu_j of a block, each in [0, 1]."""

    nus: np.ndarray

    def __post_init__(self) -> None:
        nus = np.asarray(self.nus, dtype=float)
        if nus.ndim != 1 or nus.size == 0:
            raise DomainError("fermion spectrum must be a nonempty 1d array")
        if np.any(nus < -1e-12) or np.any(nus > 1.0 + 1e-12):
            raise SolverConsistencyError(
                "mode occupancies left [0, 1] by more than the clamp tolerance: "
                f"range [{nus.min()}, {nus.max()}]"
            )
        object.__setattr__(self, "nus", np.clip(nus, 0.0, 1.0))


@dataclass(frozen=True)
class GroundState:
    """Dense ground state vector with its energy and degeneracy flag."""

    vector: np.ndarray
    energy: float
    gap: float
    degenerate: bool


@dataclass(frozen=True)
class MajoranaCovariance:
    """Antisymmetric matrix M with <gamma_j gamma_k> = delta_jk + i M_jk."""

    matrix: np.ndarray
    degenerate: bool
    min_mode_energy: float


# --- dense oracle ---------------------------------------------------------

_SX = np.array([[0.0, 1.0], [1.0, 0.0]])
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]])


def _site_operator(op: np.ndarray, site: int, n_sites: int) -> sp.csr_matrix:
    out = sp.identity(1, format="csr")
    for m in range(n_sites):
        out = sp.kron(out, sp.csr_matrix(op) if m == site else sp.identity(2, format="csr"), format="csr")
    return out


def _bond_operator(site_a: int, site_b: int, n_sites: int) -> sp.csr_matrix:
    out = sp.identity(1, format="csr")
    for m in range(n_sites):
        if m == site_a or m == site_b:
            out = sp.kron(out, sp.csr_matrix(_SZ), format="csr")
        else:
            out = sp.kron(out, sp.identity(2, format="csr"), format="csr")
    return out


def dense_hamiltonian(params: TFIParams) -> sp.csr_matrix:
    """Sparse 2^N x 2^N Hamiltonian matrix.  Guarded to N <= 14."""
    n = params.n_sites
    if n > DENSE_SITE_LIMIT:
        raise ResourceLimitError(
            f"dense solver is limited to {DENSE_SITE_LIMIT} sites, got {n}"
        )
    dim = 2**n
    h = sp.csr_matrix((dim, dim))
    for site in range(n):
        h = h - _site_operator(_SX, site, n)
    n_bonds = n if params.bc == "periodic" else n - 1
    for site in range(n_bonds):
        h = h - params.lam * _bond_operator(site, (site + 1) % n, n)
    return h


def _parity_operator(n_sites: int) -> sp.csr_matrix:
    out = sp.csr_matrix(_SX)
    for _ in range(n_sites - 1):
        out = sp.kron(out, sp.csr_matrix(_SX), format="csr")
    return out


def dense_ground_state(params: TFIParams) -> GroundState:
    """Lowest eigenvector of the dense Hamiltonian.

    When the two lowest levels are degenerate within 1e-12 (relative to the
    spectral scale), the returned state is the spin-flip symmetric
    combination in the degenerate subspace and the result is flagged.  The
    global phase is fixed by making the largest-magnitude amplitude real
    and positive.
    """
    h = dense_hamiltonian(params)
    dim = h.shape[0]
    if dim <= 64:
        vals, vecs = la.eigh(h.toarray())
        vals, vecs = vals[:2], vecs[:, :2]
    else:
        vals, vecs = sla.eigsh(h, k=2, which="SA")
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]
    scale = max(abs(float(vals[0])), 1.0)
    gap = float(vals[1] - vals[0])
    degenerate = gap < DEGENERACY_TOL * scale
    if degenerate:
        parity = _parity_operator(params.n_sites)
        sub = vecs.T @ (parity @ vecs)
        w, u = la.eigh(0.5 * (sub + sub.T))
        vec = vecs @ u[:, int(np.argmax(w))]
    else:
        vec = vecs[:, 0]
    vec = vec / np.linalg.norm(vec)
    k = int(np.argmax(np.abs(vec)))
    if vec[k] < 0:
        vec = -vec
    return GroundState(vector=vec, energy=float(vals[0]), gap=gap, degenerate=degenerate)


def reduced_density_matrix(state, block: BlockSpec) -> EntanglementSpectrum:
    """Entanglement spectrum of a contiguous block of a pure state.

    ``state`` is a 2^N amplitude vector (or a GroundState).  The spectrum
    is obtained from the singular values of the bipartition matrix, which
    is equivalent to diagonalizing the partial trace over the complement.
    """
    if isinstance(state, GroundState):
        state = state.vector
    vec = np.asarray(state)
    n = int(round(math.log2(vec.size)))
    if 2**n != vec.size:
        raise DomainError(f"state vector length {vec.size} is not a power of two")
    if not (block.start + block.length <= n and block.length >= 1):
        raise DomainError(f"block {block} does not fit an {n}-site state")
    psi = vec.reshape([2] * n)
    inside = list(range(block.start, block.start + block.length))
    outside = [i for i in range(n) if i not in inside]
    psi = np.transpose(psi, inside + outside).reshape(2**block.length, -1)
    svals = la.svd(psi, compute_uv=False)
    probs = svals**2
    probs = probs / probs.sum()
    return EntanglementSpectrum(probs)


def entropy_from_spectrum(spectrum: EntanglementSpectrum) -> float:
    """Von Neumann entropy -sum p ln p with 0 ln 0 = 0."""
    p = spectrum.probabilities
    p = p[p > 0.0]
    return float(-np.sum(p * np.log(p)))


def renyi_from_spectrum(spectrum: EntanglementSpectrum, n: float) -> float:
    """Tr rho_A^n = sum_j p_j^n; accepts real n > 0 so the n -> 1 derivative
    of the replica construction can be probed numerically."""
    if not n > 0.0:
        raise DomainError(f"Renyi index must be positive, got {n}")
    p = spectrum.probabilities
    p = p[p > 0.0]
    return float(np.sum(p**n))


# --- free-fermion solver ---------------------------------------------------


def _majorana_coupling(params: TFIParams) -> np.ndarray:
    """Quadratic Majorana coupling matrix K with H = (i/4) gamma^T K gamma.

    Ordering gamma_{2n} = a_n = c_n + c*_n and gamma_{2n+1} = b_n
    = -i(c_n - c*_n).  The transverse field gives i a_n b_n terms, the bond
    gives i lam b_n a_{n+1}; for the periodic chain the wrap-around bond
    flips sign, which is the antiperiodic (even parity sector) convention.
    """
    n = params.n_sites
    k = np.zeros((2 * n, 2 * n))
    for site in range(n):
        k[2 * site, 2 * site + 1] += 2.0
        k[2 * site + 1, 2 * site] -= 2.0
    n_bonds = n if params.bc == "periodic" else n - 1
    for site in range(n_bonds):
        nxt = (site + 1) % n
        sign = -1.0 if (params.bc == "periodic" and site == n - 1) else 1.0
        k[2 * site + 1, 2 * nxt] += 2.0 * params.lam * sign
        k[2 * nxt, 2 * site + 1] -= 2.0 * params.lam * sign
    return k


def ground_covariance(params: TFIParams) -> MajoranaCovariance:
    """Ground-state Majorana covariance of the whole chain.

    iK is Hermitian with eigenvalues in +- pairs; filling every negative
    mode gives M = Re(-i U sgn U*) where sgn assigns -1 to the lower half
    of the spectrum.  A mode energy below 1e-12 marks a (numerically)
    degenerate ground space: the construction then resolves one of the two
    cat states, which all share the same block entropies, and the result is
    flagged.
    """
    k = _majorana_coupling(params)
    w, u = la.eigh(1j * k)
    n = params.n_sites
    min_mode = float(np.min(np.abs(w)))
    sgn = np.concatenate([-np.ones(n), np.ones(n)])
    m = (-1j * (u * sgn) @ u.conj().T).real
    m = 0.5 * (m - m.T)
    return MajoranaCovariance(
        matrix=m,
        degenerate=min_mode < DEGENERACY_TOL,
        min_mode_energy=min_mode,
    )


def block_majorana_correlations(
    params: TFIParams, block: BlockSpec, cov: MajoranaCovariance | None = None
) -> np.ndarray:
    """Block restriction (2 ell x 2 ell) of the Majorana covariance.

    Passing a precomputed ``cov`` avoids repeating the chain solve when
    sweeping over blocks.
    """
    block.validate_for(params)
    if cov is None:
        cov = ground_covariance(params)
    idx = np.arange(2 * block.start, 2 * (block.start + block.length))
    return cov.matrix[np.ix_(idx, idx)]


def fermion_spectrum(corr: np.ndarray) -> FermionSpectrum:
    """Extract the paired +-i nu_j eigenvalues of a block covariance.

    The input must be real antisymmetric; its eigenvalues come in +-i nu
    pairs and the nu_j are returned clamped to [0, 1].  Asymmetry of the
    input or unpaired eigenvalues beyond 1e-8 are reported as solver bugs.
    """
    m = np.asarray(corr, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 != 0:
        raise DomainError(f"covariance block must be square of even size, got {m.shape}")
    asym = float(np.max(np.abs(m + m.T))) if m.size else 0.0
    if asym > 1e-8:
        raise SolverConsistencyError(f"covariance block is not antisymmetric (deviation {asym})")
    ev = np.sort(la.eigvalsh(1j * m))
    half = m.shape[0] // 2
    pairing = float(np.max(np.abs(ev + ev[::-1])))
    if pairing > 1e-8:
        raise SolverConsistencyError(f"eigenvalues are not +- paired (deviation {pairing})")
    return FermionSpectrum(ev[half:])


def _binary_entropy(p: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p)
    mask = (p > 0.0) & (p < 1.0)
    q = p[mask]
    out[mask] = -q * np.log(q) - (1.0 - q) * np.log(1.0 - q)
    return out


def ff_entropy(spectrum: FermionSpectrum) -> float:
    """Block entropy sum_j H2((1 + nu_j)/2) of a fermionic Gaussian state."""
    return float(np.sum(_binary_entropy((1.0 + spectrum.nus) / 2.0)))


def ff_renyi(spectrum: FermionSpectrum, n: float) -> float:
    """Tr rho_A^n = prod_j [((1+nu)/2)^n + ((1-nu)/2)^n]; real n > 0 allowed."""
    if not n > 0.0:
        raise DomainError(f"Renyi index must be positive, got {n}")
    p = (1.0 + spectrum.nus) / 2.0
    return float(np.prod(p**n + (1.0 - p) ** n))


def block_entropy(
    params: TFIParams,
    block: BlockSpec,
    method: str = "freefermion",
    cov: MajoranaCovariance | None = None,
) -> float:
    """Entanglement entropy of a block by either solver."""
    if method == "dense":
        return entropy_from_spectrum(reduced_density_matrix(dense_ground_state(params), block))
    if method == "freefermion":
        return ff_entropy(fermion_spectrum(block_majorana_correlations(params, block, cov)))
    raise DomainError(f"unknown method {method!r}")


def block_renyi(
    params: TFIParams,
    block: BlockSpec,
    n: float,
    method: str = "freefermion",
    cov: MajoranaCovariance | None = None,
) -> float:
    """Tr rho_A^n of a block by either solver."""
    if method == "dense":
        return renyi_from_spectrum(reduced_density_matrix(dense_ground_state(params), block), n)
    if method == "freefermion":
        return ff_renyi(fermion_spectrum(block_majorana_correlations(params, block, cov)), n)
    raise DomainError(f"unknown method {method!r}")


def correlation_length(lam: float) -> float:
    """xi = 1/|lam - 1| in lattice units; infinite exactly at the critical point."""
    if not (math.isfinite(lam) and lam >= 0.0):
        raise DomainError(f"coupling must be a nonnegative finite real, got {lam}")
    if lam == 1.0:
        return math.inf
    return 1.0 / abs(lam - 1.0)
