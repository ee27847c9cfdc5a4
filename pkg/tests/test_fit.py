import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scrambling.harness.fit import SINUSOID_TOL, fit_frequency

T = np.linspace(0, 20, 2001)


def test_closed_form_frequency():
    b, jz = 0.3, 0.2
    fit = fit_frequency(T, np.cos(4 * (b + jz) * T))
    assert fit.is_periodic and fit.is_pure_sinusoid
    assert abs(fit.fundamental_omega - 2.0) <= 1e-6 * 2.0
    assert abs(fit.amplitude - 1) < 1e-9 and abs(fit.offset) < 1e-9


def test_constant_series():
    fit = fit_frequency(T, np.full(T.size, 0.7))
    assert not fit.is_periodic
    assert fit.amplitude == 0
    assert fit.offset == pytest.approx(0.7)


def test_two_frequency_product_is_not_a_sinusoid():
    b, jz = 0.5, 0.2
    y = np.cos(4 * b * T) * np.cos(4 * jz * T)
    fit = fit_frequency(T, y)
    assert not fit.is_pure_sinusoid
    assert fit.residual_rms > SINUSOID_TOL * fit.amplitude
    # oracle: the best single cosine leaves a residual comparable to the signal itself
    assert fit.residual_rms > 0.1


def test_incommensurate_sum_not_periodic():
    y = np.cos(T) + np.cos(math.sqrt(2) * T)
    assert not fit_frequency(T, y).is_periodic


def test_rectified_cosine_periodic_but_not_sinusoid():
    fit = fit_frequency(T, np.abs(np.cos(2 * T)))
    assert fit.is_periodic and not fit.is_pure_sinusoid
    assert fit.period == pytest.approx(math.pi / 2, rel=1e-6)
    assert fit.fundamental_omega == pytest.approx(4.0, rel=1e-6)


@pytest.mark.parametrize("t", [
    np.r_[np.linspace(0, 1, 50), np.linspace(1.1, 3, 50)],
    np.linspace(0, 1, 63),
    np.linspace(1, 0, 100),
])
def test_bad_grids_rejected(t):
    with pytest.raises(ValueError):
        fit_frequency(t, np.cos(t))


@given(st.floats(0.5, 6), st.floats(0.1, 3), st.floats(-math.pi, math.pi), st.floats(-2, 2))
@settings(max_examples=40, deadline=None)
def test_sinusoid_recovery(omega, amp, phase, offset):
    y = amp * np.cos(omega * T + phase) + offset
    fit = fit_frequency(T, y)
    assert fit.is_pure_sinusoid
    assert abs(fit.fundamental_omega - omega) <= 1e-6 * omega
    assert fit.residual_rms >= 0
