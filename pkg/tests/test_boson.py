"""Harmonic chain solver: symplectic spectra and entropy behavior."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entscale import boson
from entscale.errors import DomainError, SolverConsistencyError, ZeroModeError


def test_params_validation():
    with pytest.raises(ZeroModeError, match="raise the mass"):
        boson.BosonParams(mass=1e-9, n_sites=16)
    with pytest.raises(DomainError):
        boson.BosonParams(mass=-1.0, n_sites=16)
    with pytest.raises(DomainError):
        boson.BosonParams(mass=1.0, n_sites=1)
    with pytest.raises(DomainError):
        boson.BosonParams(mass=1.0, n_sites=8, bc="moebius")


def test_single_site_uncertainty_bound():
    # mu = sqrt(<x^2><p^2>) >= 1/2, approaching equality as the site decouples
    for bc in ("open", "periodic"):
        for mass, bound in [(0.5, 1e-2), (100.0, 1e-4)]:
            params = boson.BosonParams(mass=mass, n_sites=32, bc=bc)
            x, p = boson.boson_correlators(params, np.array([7]))
            mu = float(np.sqrt(x[0, 0] * p[0, 0]))
            assert mu >= 0.5 - 1e-12
            if mass > 1.0:
                assert mu - 0.5 < bound


def test_deep_massive_half_chain_nearly_pure():
    params = boson.BosonParams(mass=10.0, n_sites=64)
    assert boson.block_entropy(params, np.arange(32)) < 0.05


def test_entropy_decreases_beyond_mass_five():
    previous = None
    for mass in (5.0, 7.0, 10.0, 15.0, 30.0):
        params = boson.BosonParams(mass=mass, n_sites=64)
        s = boson.block_entropy(params, np.arange(32))
        if previous is not None:
            assert s < previous
        previous = s


def test_entropy_monotone_in_mass_generic():
    masses = np.geomspace(0.01, 2.0, 9)
    values = [
        boson.block_entropy(boson.BosonParams(mass=float(m), n_sites=48), np.arange(24))
        for m in masses
    ]
    assert np.all(np.diff(values) < 0)


def test_boson_entropy_values():
    assert boson.boson_entropy(boson.SymplecticSpectrum(np.array([0.5, 0.5]))) == 0.0
    # high-precision: (3/2) ln(3/2) - (1/2) ln(1/2)
    single = boson.boson_entropy(boson.SymplecticSpectrum(np.array([1.0])))
    assert single == pytest.approx(0.95477125244221923, rel=1e-14)


def test_symplectic_spectrum_violation_rejected():
    with pytest.raises(SolverConsistencyError):
        boson.SymplecticSpectrum(np.array([0.4]))
    x = 0.16 * np.eye(3)
    p = np.eye(3)
    # mu = 0.4 from doctored correlators
    with pytest.raises(SolverConsistencyError):
        boson.symplectic_spectrum(x, p)


def test_symplectic_clamp():
    spec = boson.SymplecticSpectrum(np.array([0.5 - 1e-11, 2.0]))
    assert spec.mus[0] == 0.5


@settings(max_examples=20, deadline=None)
@given(
    n=st.integers(min_value=4, max_value=24),
    mass=st.floats(min_value=2e-3, max_value=50.0),
    bc=st.sampled_from(["open", "periodic"]),
    seed=st.integers(min_value=0, max_value=10_000),
)
def test_symplectic_bound_holds_everywhere(n, mass, bc, seed):
    rng = np.random.default_rng(seed)
    length = int(rng.integers(1, n))
    start = int(rng.integers(0, n - length + 1))
    params = boson.BosonParams(mass=mass, n_sites=n, bc=bc)
    x, p = boson.boson_correlators(params, np.arange(start, start + length))
    spec = boson.symplectic_spectrum(x, p)
    assert np.all(spec.mus >= 0.5)
    assert boson.boson_entropy(spec) >= 0.0


def test_block_complement_symmetry_open():
    params = boson.BosonParams(mass=0.05, n_sites=40)
    full = boson.chain_correlators(params)
    left = boson.block_entropy(params, np.arange(15), full)
    right = boson.block_entropy(params, np.arange(15, 40), full)
    assert left == pytest.approx(right, abs=1e-9)


def test_block_validation():
    params = boson.BosonParams(mass=1.0, n_sites=8)
    with pytest.raises(DomainError):
        boson.boson_correlators(params, np.array([], dtype=int))
    with pytest.raises(DomainError):
        boson.boson_correlators(params, np.array([9]))


def test_half_split_near_critical_tracks_boundary_log_law():
    # with a tiny gap the half-split entropy of open chains grows as
    # (1/6) ln L + const; check the increment between two sizes
    sizes = (64, 256)
    values = []
    for n in sizes:
        params = boson.BosonParams(mass=1e-6, n_sites=n)
        values.append(boson.block_entropy(params, np.arange(n // 2)))
    increment = values[1] - values[0]
    expected = math.log(sizes[1] / sizes[0]) / 6.0
    assert increment == pytest.approx(expected, rel=0.05)
