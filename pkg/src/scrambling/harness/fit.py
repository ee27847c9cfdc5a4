"""Frequency and periodicity analysis of sampled quantifier curves."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import least_squares, minimize_scalar

#: A fit is a pure sinusoid when residual_rms <= SINUSOID_TOL * amplitude.
SINUSOID_TOL = 1e-6
#: Normalised self-mismatch below which a shifted curve counts as a repeat.
PERIODIC_TOL = 1e-4
MIN_POINTS = 64


@dataclass(frozen=True)
class FrequencyFit:
    is_periodic: bool
    fundamental_omega: float
    amplitude: float
    offset: float
    residual_rms: float
    phase: float = 0.0
    is_pure_sinusoid: bool = False
    period: float = math.nan


def _check_grid(t: np.ndarray, y: np.ndarray) -> float:
    if t.ndim != 1 or t.shape != y.shape:
        raise ValueError(f"time and value arrays differ in shape: {t.shape} vs {y.shape}")
    if t.size < MIN_POINTS:
        raise ValueError(f"need at least {MIN_POINTS} samples, got {t.size}")
    dt = np.diff(t)
    if dt[0] <= 0 or np.max(np.abs(dt - dt[0])) > 1e-9 * abs(dt[0]) + 1e-12:
        raise ValueError("fit_frequency requires a uniform, increasing time grid")
    return float(t[-1] - t[0]) / (t.size - 1)


def _spectral_peak(t: np.ndarray, yc: np.ndarray, dt: float) -> float:
    """Angular frequency of the largest non-DC peak of a zero-padded spectrum."""
    n = yc.size
    pad = 16 * n
    spec = np.abs(np.fft.rfft(yc * np.hanning(n), pad))
    spec[0] = 0.0
    k = int(np.argmax(spec))
    # parabolic refinement on the log magnitude
    if 0 < k < spec.size - 1 and min(spec[k - 1], spec[k], spec[k + 1]) > 0:
        a, b, c = np.log(spec[k - 1:k + 2])
        denom = a - 2 * b + c
        shift = 0.5 * (a - c) / denom if denom != 0 else 0.0
    else:
        shift = 0.0
    return 2 * math.pi * (k + shift) / (pad * dt)


def _self_mismatch(spline: CubicSpline, t: np.ndarray, y: np.ndarray, var: float, lag: float) -> float:
    mask = t + lag <= t[-1]
    if mask.sum() < 8:
        return math.inf
    d = spline(t[mask] + lag) - y[mask]
    return float(np.mean(d * d) / (2 * var))


def _detect_period(t: np.ndarray, y: np.ndarray, dt: float) -> tuple[float, float]:
    """Shortest lag at which the curve repeats, and the mismatch there."""
    var = float(np.var(y))
    spline = CubicSpline(t, y)
    span = t[-1] - t[0]
    lags = np.arange(2, int(span / dt / 2) + 1) * dt
    if lags.size < 3:
        return math.nan, math.inf
    mis = np.array([_self_mismatch(spline, t, y, var, L) for L in lags])
    for k in range(1, lags.size - 1):
        if mis[k] <= mis[k - 1] and mis[k] <= mis[k + 1] and mis[k] < 0.1:
            res = minimize_scalar(
                lambda L: _self_mismatch(spline, t, y, var, L),
                bounds=(lags[k] - dt, lags[k] + dt), method="bounded",
                options={"xatol": 1e-12 * max(1.0, lags[k])})
            if res.fun <= PERIODIC_TOL:
                return float(res.x), float(res.fun)
    return math.nan, math.inf


def fit_frequency(t, y) -> FrequencyFit:
    """Fit ``A cos(omega t + phase) + c`` and test the curve for periodicity.

    The dominant peak of a zero-padded spectrum seeds a nonlinear least
    squares refinement. A curve is periodic when either the cosine fits it
    to within :data:`SINUSOID_TOL`, or it repeats itself under a time shift
    found by scanning the self-mismatch over lags. For non-sinusoidal
    periodic curves ``fundamental_omega`` is ``2 pi / period``.

    Raises:
        ValueError: On a non-uniform grid or fewer than 64 samples.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    dt = _check_grid(t, y)
    offset = float(np.mean(y))
    yc = y - offset
    scale = max(1.0, abs(offset))
    if float(np.max(np.abs(yc))) <= 1e-12 * scale:
        return FrequencyFit(False, 0.0, 0.0, offset, float(np.sqrt(np.mean(yc ** 2))))

    omega0 = _spectral_peak(t, yc, dt)
    basis = np.stack([np.cos(omega0 * t), np.sin(omega0 * t)], axis=1)
    (ca, sa), *_ = np.linalg.lstsq(basis, yc, rcond=None)
    amp0, phase0 = math.hypot(ca, sa), math.atan2(-sa, ca)

    def resid(p):
        a, w, ph, c = p
        return a * np.cos(w * t + ph) + c - y

    sol = least_squares(resid, [amp0, omega0, phase0, offset],
                        xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
    a, w, ph, c = sol.x
    if a < 0:
        a, ph = -a, ph + math.pi
    if w < 0:
        w, ph = -w, -ph
    ph = (ph + math.pi) % (2 * math.pi) - math.pi
    rms = float(np.sqrt(np.mean(sol.fun ** 2)))
    pure = rms <= SINUSOID_TOL * a
    if pure:
        return FrequencyFit(True, float(w), float(a), float(c), rms, float(ph), True, 2 * math.pi / w)

    period, _ = _detect_period(t, y, dt)
    if math.isfinite(period):
        return FrequencyFit(True, 2 * math.pi / period, float(a), float(c), rms, float(ph), False, period)
    return FrequencyFit(False, float(w), float(a), float(c), rms, float(ph), False)
