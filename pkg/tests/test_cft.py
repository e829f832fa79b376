"""Closed-form entropy laws: frozen values, limits, symmetries."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import entscale as es
from entscale.cft import (
    DEFAULT_CONSTANTS,
    BoundaryFinite,
    InfiniteLine,
    IntervalSet,
    PeriodicFinite,
    ScalingConstants,
    Thermal,
    geometry_entropy,
)
from entscale.errors import CutoffViolation, DomainError, IntervalSetError

# Expected values below marked "high-precision" were computed independently
# with 50-digit arithmetic (mpmath) from the stated formulas and frozen here.


def test_minimal_model_ising():
    assert es.minimal_model_central_charge(3) == pytest.approx(0.5, abs=1e-15)


def test_minimal_model_potts():
    assert es.minimal_model_central_charge(5) == pytest.approx(0.8, abs=1e-15)


def test_minimal_model_free_boson_limit():
    assert abs(es.minimal_model_central_charge(10**6) - 1.0) < 1e-5


def test_minimal_model_domain():
    with pytest.raises(DomainError):
        es.minimal_model_central_charge(2)


def test_twist_dimension_identity_sheet():
    for c in (0.5, 1.0, 7.3):
        assert es.twist_dimension(1, c) == 0.0


def test_twist_dimension_values():
    assert es.twist_dimension(2, 0.5) == pytest.approx(0.015625, abs=1e-15)
    assert es.twist_dimension(3, 1.0) == pytest.approx(1.0 / 27.0, abs=1e-15)


def test_twist_dimension_domain():
    with pytest.raises(DomainError):
        es.twist_dimension(0, 1.0)
    with pytest.raises(DomainError):
        es.twist_dimension(2, -1.0)


def test_renyi_trace_normalization():
    for ell in (2.0, 17.0, 1234.5):
        assert es.renyi_trace_interval(1, ell, 1.0, 0.73) == 1.0


def test_renyi_trace_values():
    # high-precision: 100^(-1/8) and 10^(-4/9)
    assert es.renyi_trace_interval(2, 100.0, 1.0, 0.5) == pytest.approx(
        0.56234132519034908, rel=1e-14
    )
    assert es.renyi_trace_interval(3, 10.0, 1.0, 1.0) == pytest.approx(
        0.35938136638046273, rel=1e-14
    )


def test_renyi_trace_cutoff():
    with pytest.raises(CutoffViolation):
        es.renyi_trace_interval(2, 0.5, 1.0, 0.5)


def test_renyi_custom_prefactor():
    consts = ScalingConstants(cn={1: 1.0, 2: 0.9})
    plain = es.renyi_trace_interval(2, 50.0, 1.0, 1.0)
    assert es.renyi_trace_interval(2, 50.0, 1.0, 1.0, consts) == pytest.approx(0.9 * plain)
    with pytest.raises(DomainError):
        ScalingConstants(cn={1: 2.0})


def test_entropy_interval_values():
    assert es.entropy_interval(1.0, 1.0, 0.5) == 0.0
    assert es.entropy_interval(math.e**3, 1.0, 0.5) == pytest.approx(0.5, rel=1e-14)
    consts = ScalingConstants(k1=0.7)
    # high-precision: ln(1000)/3 + 0.7
    assert es.entropy_interval(1000.0, 1.0, 1.0, consts) == pytest.approx(
        3.0025850929940457, rel=1e-14
    )


def test_entropy_interval_cutoff():
    with pytest.raises(CutoffViolation):
        es.entropy_interval(0.99, 1.0, 0.5)


def test_thermal_frozen_value():
    # high-precision: (1/6) ln((100/pi) sinh(pi))
    assert es.entropy_thermal(100.0, 100.0, 1.0, 0.5) == pytest.approx(
        0.98450276409863401, rel=1e-14
    )


def test_thermal_short_interval_limit():
    # beta/ell = 1e3: agrees with the zero-temperature law to 1e-4
    s_thermal = es.entropy_thermal(10.0, 10000.0, 1.0, 1.0)
    s_zero = es.entropy_interval(10.0, 1.0, 1.0)
    assert abs(s_thermal - s_zero) < 1e-4


def test_thermal_zero_temperature_pointwise():
    # beta/ell = 1e6: pointwise agreement to 1e-9
    s_thermal = es.entropy_thermal(3.0, 3.0e6, 1.0, 0.5)
    s_zero = es.entropy_interval(3.0, 1.0, 0.5)
    assert abs(s_thermal - s_zero) < 1e-9


def test_thermal_extensive_limit():
    # ell/beta = 1e3: leading term (pi c / 3)(ell/beta) to 0.1 percent
    c, beta, ell = 0.5, 100.0, 100.0 * 1000.0
    s = es.entropy_thermal(ell, beta, 1.0, c)
    lead = (math.pi * c / 3.0) * (ell / beta)
    assert abs(s - lead) / lead < 1e-3


def test_periodic_reflection_symmetry():
    length = 257.0
    for ell in np.linspace(3.0, length - 3.0, 41):
        left = es.entropy_periodic(ell, length, 1.0, 0.5)
        right = es.entropy_periodic(length - ell, length, 1.0, 0.5)
        assert left == pytest.approx(right, abs=5e-14)


def test_periodic_maximum_at_half():
    length = 100.0
    grid = np.linspace(2.0, 98.0, 97)
    values = [es.entropy_periodic(ell, length, 1.0, 1.0) for ell in grid]
    assert grid[int(np.argmax(values))] == pytest.approx(length / 2.0)


def test_periodic_decompactification():
    # L/ell = 1e4 reduces to the infinite line within 1e-6
    s_per = es.entropy_periodic(5.0, 5.0e4, 1.0, 1.0)
    s_line = es.entropy_interval(5.0, 1.0, 1.0)
    assert abs(s_per - s_line) < 1e-6


def test_periodic_domain():
    with pytest.raises(DomainError):
        es.entropy_periodic(10.0, 10.0, 1.0, 0.5)


def test_boundary_values():
    assert es.entropy_boundary(0.5, 1.0, 0.5) == 0.0
    # high-precision: (1/12) ln(100)
    assert es.entropy_boundary(50.0, 1.0, 0.5) == pytest.approx(
        0.38376418216567428, rel=1e-14
    )


def test_bulk_boundary_prefactor_ratio():
    # with equal log arguments the bulk coefficient is exactly twice the
    # boundary one, in all three geometry pairs
    c = 0.73
    for ell in (5.0, 40.0, 333.0):
        bulk = es.entropy_interval(2.0 * ell, 1.0, c)
        bdry = es.entropy_boundary(ell, 1.0, c)
        assert bulk == pytest.approx(2.0 * bdry, rel=1e-13)
    beta = 77.0
    for ell in (3.0, 20.0):
        # sinh arguments match for ell_bulk = 2 ell_bdry
        bulk = es.entropy_thermal(2.0 * ell, beta, 1.0, c)
        bdry = es.entropy_boundary_thermal(ell, beta, 1.0, c)
        assert bulk == pytest.approx(2.0 * bdry, rel=1e-13)
    length = 90.0
    for ell in (7.0, 33.0):
        # the (2L/pi) sin(pi ell/L) argument equals the bulk one at (2 ell, 2L)
        bulk = es.entropy_periodic(2.0 * ell, 2.0 * length, 1.0, c)
        bdry = es.entropy_boundary_finite(ell, length, 1.0, c)
        assert bulk == pytest.approx(2.0 * bdry, rel=1e-13)


def test_boundary_thermal_frozen_value():
    # high-precision: (1/6) ln((100/pi) sinh(2 pi))
    assert es.entropy_boundary_thermal(100.0, 100.0, 1.0, 1.0) == pytest.approx(
        1.5084124899016492, rel=1e-14
    )


def test_boundary_thermal_extensive_limit():
    c, beta, ell = 1.0, 100.0, 100.0 * 1000.0
    s = es.entropy_boundary_thermal(ell, beta, 1.0, c)
    lead = (math.pi * c / 3.0) * (ell / beta)
    assert abs(s - lead) / lead < 1e-3


def test_boundary_thermal_zero_temperature():
    s_thermal = es.entropy_boundary_thermal(10.0, 10000.0, 1.0, 0.5)
    s_zero = es.entropy_boundary(10.0, 1.0, 0.5)
    assert abs(s_thermal - s_zero) < 1e-4


def test_boundary_finite_symmetry_and_limit():
    length = 123.0
    for ell in (10.0, 30.0, 61.5):
        assert es.entropy_boundary_finite(ell, length, 1.0, 1.0) == pytest.approx(
            es.entropy_boundary_finite(length - ell, length, 1.0, 1.0), abs=5e-14
        )
    s_fin = es.entropy_boundary_finite(5.0, 5.0e4, 1.0, 1.0)
    assert abs(s_fin - es.entropy_boundary(5.0, 1.0, 1.0)) < 1e-6


def test_boundary_finite_frozen_value():
    # high-precision: (1/12) ln(200/pi)
    assert es.entropy_boundary_finite(50.0, 100.0, 1.0, 0.5) == pytest.approx(
        0.34613229005821971, rel=1e-14
    )


def test_intervals_single_bit_for_bit():
    for ell, a, c, k1 in [(7.0, 1.0, 0.5, 0.0), (123.4, 0.2, 1.7, 0.31)]:
        consts = ScalingConstants(k1=k1)
        assert es.entropy_intervals([(0.0, ell)], a, c, consts) == es.entropy_interval(
            ell, a, c, consts
        )


def test_intervals_far_separation_doubling():
    # d/ell = 1e6: decouples into twice the single-interval entropy (1e-4)
    ell, d, a, c = 1.0, 1.0e6, 0.01, 1.0
    joint = es.entropy_intervals([(0.0, ell), (d + ell, d + 2.0 * ell)], a, c)
    single = es.entropy_interval(ell, a, c)
    assert abs(joint - 2.0 * single) < 1e-4


def test_intervals_two_interval_frozen_value():
    # u = (0, 3), v = (1, 4), a = 0.01, c = 1: high-precision evaluation of
    # (1/3)[ln 100 + ln 400 + ln 200 + ln 100 - ln 300 - ln 300], where the
    # ln 200 term is the gap contribution between the intervals
    assert es.entropy_intervals([(0.0, 1.0), (3.0, 4.0)], 0.01, 1.0) == pytest.approx(
        3.0308524454399331, rel=1e-13
    )


def test_intervals_touching_rejected_with_names():
    with pytest.raises(IntervalSetError, match="0 and 1 touch"):
        IntervalSet(((0.0, 1.0), (1.0, 2.0)))


def test_intervals_overlap_and_order_rejected():
    with pytest.raises(IntervalSetError):
        IntervalSet(((0.0, 2.0), (1.0, 3.0)))
    with pytest.raises(IntervalSetError):
        IntervalSet(((3.0, 4.0), (0.0, 1.0)))
    with pytest.raises(IntervalSetError):
        IntervalSet(())


def test_intervals_cutoff_guards():
    with pytest.raises(CutoffViolation):
        es.entropy_intervals([(0.0, 0.5)], 1.0, 1.0)
    with pytest.raises(CutoffViolation):
        es.entropy_intervals([(0.0, 2.0), (2.5, 5.0)], 1.0, 1.0)


def test_off_critical_values():
    xi = 4000.0
    assert es.entropy_off_critical(xi, 1, 1.0, 0.5) == pytest.approx(
        math.log(xi) / 12.0, rel=1e-14
    )
    assert es.entropy_off_critical(xi, 1, 1.0, 1.0) == pytest.approx(
        math.log(xi) / 6.0, rel=1e-14
    )
    assert es.entropy_off_critical(math.e**6, 2, 1.0, 1.0) == pytest.approx(2.0, rel=1e-13)


def test_off_critical_guards():
    with pytest.raises(DomainError):
        es.entropy_off_critical(0.5, 1, 1.0, 0.5)
    with pytest.raises(DomainError):
        es.entropy_off_critical(9.0, 1, 1.0, 0.5)
    with pytest.warns(UserWarning):
        es.entropy_off_critical(50.0, 1, 1.0, 0.5)


def test_replica_derivative_recovers_entropy():
    # -d/dn Tr rho^n at n = 1 equals the entropy with k1 = 0 (central
    # difference over real n, tolerance 1e-6)
    h = 1e-4
    for c, ell in [(0.5, 100.0), (1.0, 17.0)]:
        up = es.renyi_trace_interval(1.0 + h, ell, 1.0, c)
        down = es.renyi_trace_interval(1.0 - h, ell, 1.0, c)
        derivative = -(up - down) / (2.0 * h)
        assert abs(derivative - es.entropy_interval(ell, 1.0, c)) < 1e-6


@settings(max_examples=40, deadline=None)
@given(
    c=st.floats(min_value=0.1, max_value=5.0),
    ell=st.floats(min_value=2.0, max_value=1e4),
    factor=st.floats(min_value=1.01, max_value=10.0),
)
def test_entropies_increase_with_length(c, ell, factor):
    bigger = ell * factor
    assert es.entropy_interval(bigger, 1.0, c) > es.entropy_interval(ell, 1.0, c)
    assert es.entropy_boundary(bigger, 1.0, c) > es.entropy_boundary(ell, 1.0, c)
    beta = 3.0e4
    assert es.entropy_thermal(bigger, beta, 1.0, c) > es.entropy_thermal(ell, beta, 1.0, c)
    assert es.entropy_boundary_thermal(bigger, beta, 1.0, c) > es.entropy_boundary_thermal(
        ell, beta, 1.0, c
    )


@settings(max_examples=40, deadline=None)
@given(
    c=st.floats(min_value=0.1, max_value=5.0),
    frac=st.floats(min_value=0.02, max_value=0.48),
    factor=st.floats(min_value=1.01, max_value=1.04),
)
def test_periodic_increases_below_half(c, frac, factor):
    length = 1.0e4
    ell = frac * length
    assert es.entropy_periodic(ell * factor, length, 1.0, c) > es.entropy_periodic(
        ell, length, 1.0, c
    )


@settings(max_examples=30, deadline=None)
@given(xi=st.floats(min_value=150.0, max_value=1e8), factor=st.floats(min_value=1.1, max_value=5.0))
def test_off_critical_increases_with_xi(xi, factor):
    assert es.entropy_off_critical(xi * factor, 1, 1.0, 0.5) > es.entropy_off_critical(
        xi, 1, 1.0, 0.5
    )


def test_constants_default_flag():
    assert DEFAULT_CONSTANTS.defaulted
    assert not ScalingConstants(k1=0.0, k1b=0.0, cn={}).defaulted
    assert ScalingConstants(k1=1.0).defaulted


def test_geometry_dispatch_matches_direct():
    assert geometry_entropy(InfiniteLine(), 10.0, 1.0, 0.5) == es.entropy_interval(10.0, 1.0, 0.5)
    assert geometry_entropy(Thermal(beta=40.0), 10.0, 1.0, 0.5) == es.entropy_thermal(
        10.0, 40.0, 1.0, 0.5
    )
    assert geometry_entropy(PeriodicFinite(length=64.0), 10.0, 1.0, 0.5) == es.entropy_periodic(
        10.0, 64.0, 1.0, 0.5
    )


def test_geometry_validation():
    with pytest.raises(DomainError):
        Thermal(beta=-1.0)
    with pytest.raises(DomainError):
        geometry_entropy(BoundaryFinite(length=10.0), 12.0, 1.0, 0.5)
