"""Embedded Runge-Kutta-Fehlberg 4(5) stepping.

Classic six-stage Fehlberg pair: the fifth-order solution is propagated
and the difference to the embedded fourth-order solution drives the step
controller. Used in vector form by the radial envelope solver; the
streamline tracer carries a scalar twin of the same tableau (see
_kernels._driver) for speed and for bit-parity with the compiled core.
"""

from __future__ import annotations

import numpy as np

from .errors import StepSizeError

C2, C3, C4, C5, C6 = 1.0 / 4.0, 3.0 / 8.0, 12.0 / 13.0, 1.0, 1.0 / 2.0

A21 = 1.0 / 4.0
A31, A32 = 3.0 / 32.0, 9.0 / 32.0
A41, A42, A43 = 1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0
A51, A52, A53, A54 = 439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0
A61, A62, A63, A64, A65 = -8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0

B1, B3, B4, B5, B6 = 16.0 / 135.0, 6656.0 / 12825.0, 28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0
E1, E3, E4, E5, E6 = 1.0 / 360.0, -128.0 / 4275.0, -2197.0 / 75240.0, 1.0 / 50.0, 2.0 / 55.0

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0


def rkf45_step(f, t, y, h):
    """One step from (t, y) of size h; returns (y5, err_estimate)."""
    k1 = f(t, y)
    k2 = f(t + C2 * h, y + h * (A21 * k1))
    k3 = f(t + C3 * h, y + h * (A31 * k1 + A32 * k2))
    k4 = f(t + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3))
    k5 = f(t + C5 * h, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))
    k6 = f(t + C6 * h, y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))
    y5 = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6)
    err = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6)
    return y5, err


def _error_norm(err, y_old, y_new, rel_tol, abs_tol):
    scale = abs_tol + rel_tol * np.maximum(np.abs(y_old), np.abs(y_new))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def _step_factor(norm):
    if norm == 0.0:
        return MAX_FACTOR
    return min(MAX_FACTOR, max(MIN_FACTOR, SAFETY * norm ** -0.2))


def integrate_sampled(f, t0, y0, stations, rel_tol=1e-10, abs_tol=1e-10,
                      max_steps=1_000_000):
    """Integrate y' = f(t, y) recording the solution at the given stations.

    `stations` must be increasing and start at t0. Steps land exactly on
    each station. Returns an array of shape (len(stations), len(y0)).
    """
    stations = np.asarray(stations, dtype=float)
    y = np.asarray(y0, dtype=float).copy()
    out = np.empty((len(stations), len(y)), dtype=float)
    out[0] = y
    t = float(t0)
    span = float(stations[-1] - t0)
    if span == 0.0:
        return out
    h_prop = min(span, span / 100.0 + 0.0) or span
    h_min = 1e-14 * span
    attempts = 0
    for i in range(1, len(stations)):
        target = float(stations[i])
        while t < target:
            if attempts >= max_steps:
                raise StepSizeError(f"step budget exhausted at t = {t:g}")
            attempts += 1
            h = min(h_prop, target - t)
            if h < h_min:
                raise StepSizeError(f"step size underflow at t = {t:g}")
            y_new, err = rkf45_step(f, t, y, h)
            norm = _error_norm(err, y, y_new, rel_tol, abs_tol)
            if norm > 1.0:
                h_prop = h * _step_factor(norm)
                continue
            t = target if h == target - t else t + h
            y = y_new
            h_prop = h * _step_factor(norm)
        out[i] = y
    return out
