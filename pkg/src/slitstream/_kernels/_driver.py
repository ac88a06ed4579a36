"""Reference scalar streamline driver.

Adaptive RKF45 on the unit-tangent system dr/ds = j/|j|, recording at
fixed arc-length stations. This is the pure-Python implementation used
both as the fallback backend and for tracing arbitrary current fields;
_fastcore.pyx mirrors this logic statement for statement, so any change
here must be ported there.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError, SeedError

# Termination codes shared with the compiled core.
REACHED_BOUNDARY = 0
STAGNATION = 1
ENTERED_EXCLUSION_DISK = 2
HIT_BARRIER = 3
STEP_LIMIT = 4

CODE_REASONS = {
    REACHED_BOUNDARY: "reached_boundary",
    STAGNATION: "stagnation",
    ENTERED_EXCLUSION_DISK: "entered_exclusion_disk",
    HIT_BARRIER: "hit_barrier",
    STEP_LIMIT: "step_limit",
}

_FAIL_CODES = {"exclusion": ENTERED_EXCLUSION_DISK, "barrier": HIT_BARRIER}

# RKF45 tableau, scalar form (vector twin in rk45.py).
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

_BISECT_ITERS = 64


class _Stop(Exception):
    """Internal: a stage evaluation hit a stagnant spot."""


def trace_current(current, x0, y0, dirsign, rel_tol, abs_tol, record_ds,
                  r_stop, max_arc, min_current, max_steps):
    """Trace one streamline of `current` from (x0, y0).

    `current` is (x, y) -> (jx, jy), raising DomainError outside its
    domain. Returns (s, x, y, jx, jy, code) with one row per recorded
    point; the terminal point is always recorded.
    """

    def tangent(px, py):
        jx, jy = current(px, py)
        jn = math.sqrt(jx * jx + jy * jy)
        if jn <= min_current:
            raise _Stop
        return dirsign * jx / jn, dirsign * jy / jn

    def attempt(px, py, f0x, f0y, h):
        """One RKF45 step; returns (nx, ny, err_norm)."""
        k2x, k2y = tangent(px + h * (A21 * f0x), py + h * (A21 * f0y))
        k3x, k3y = tangent(px + h * (A31 * f0x + A32 * k2x), py + h * (A31 * f0y + A32 * k2y))
        k4x, k4y = tangent(px + h * (A41 * f0x + A42 * k2x + A43 * k3x),
                           py + h * (A41 * f0y + A42 * k2y + A43 * k3y))
        k5x, k5y = tangent(px + h * (A51 * f0x + A52 * k2x + A53 * k3x + A54 * k4x),
                           py + h * (A51 * f0y + A52 * k2y + A53 * k3y + A54 * k4y))
        k6x, k6y = tangent(px + h * (A61 * f0x + A62 * k2x + A63 * k3x + A64 * k4x + A65 * k5x),
                           py + h * (A61 * f0y + A62 * k2y + A63 * k3y + A64 * k4y + A65 * k5y))
        nx = px + h * (B1 * f0x + B3 * k3x + B4 * k4x + B5 * k5x + B6 * k6x)
        ny = py + h * (B1 * f0y + B3 * k3y + B4 * k4y + B5 * k5y + B6 * k6y)
        ex = h * (E1 * f0x + E3 * k3x + E4 * k4x + E5 * k5x + E6 * k6x)
        ey = h * (E1 * f0y + E3 * k3y + E4 * k4y + E5 * k5y + E6 * k6y)
        scx = abs_tol + rel_tol * max(abs(px), abs(nx))
        scy = abs_tol + rel_tol * max(abs(py), abs(ny))
        rx = ex / scx
        ry = ey / scy
        return nx, ny, math.sqrt(0.5 * (rx * rx + ry * ry))

    try:
        j0x, j0y = current(x0, y0)
    except DomainError as exc:
        raise SeedError(f"seed ({x0:g}, {y0:g}) outside the valid domain: {exc}") from exc
    jn0 = math.sqrt(j0x * j0x + j0y * j0y)
    if jn0 <= min_current:
        raise SeedError(f"seed ({x0:g}, {y0:g}) in a stagnant region (|j| = {jn0:g})")

    rec_s = [0.0]
    rec_x = [x0]
    rec_y = [y0]
    rec_jx = [j0x]
    rec_jy = [j0y]

    def push(s, px, py, jx, jy):
        if s > rec_s[-1] + 1e-12 * record_ds:
            rec_s.append(s)
            rec_x.append(px)
            rec_y.append(py)
            rec_jx.append(jx)
            rec_jy.append(jy)

    s = 0.0
    px, py = x0, y0
    f0x, f0y = dirsign * j0x / jn0, dirsign * j0y / jn0
    h_prop = record_ds
    h_min = 1e-9 * record_ds
    n_rec = 1
    attempts = 0
    code = STEP_LIMIT
    r_stop2 = r_stop * r_stop

    while True:
        if attempts >= max_steps:
            push(s, px, py, *current(px, py))
            code = STEP_LIMIT
            break
        attempts += 1
        target = min(n_rec * record_ds, max_arc)
        h = min(h_prop, target - s)
        try:
            nx, ny, norm = attempt(px, py, f0x, f0y, h)
        except DomainError as exc:
            if h <= h_min:
                push(s, px, py, *current(px, py))
                code = _FAIL_CODES.get(getattr(exc, "reason", "exclusion"),
                                       ENTERED_EXCLUSION_DISK)
                break
            h_prop = 0.5 * h
            continue
        except _Stop:
            if h <= h_min:
                push(s, px, py, *current(px, py))
                code = STAGNATION
                break
            h_prop = 0.5 * h
            continue
        if norm > 1.0:
            if h <= h_min:
                push(s, px, py, *current(px, py))
                code = STEP_LIMIT
                break
            h_prop = h * max(MIN_FACTOR, SAFETY * norm ** -0.2)
            continue
        h_prop = h * (MAX_FACTOR if norm == 0.0 else
                      min(MAX_FACTOR, max(MIN_FACTOR, SAFETY * norm ** -0.2)))
        if nx * nx + ny * ny >= r_stop2:
            # Bisect the step fraction that lands on the stopping circle.
            lo, hi = 0.0, h
            bx, by, bh = nx, ny, h
            for _ in range(_BISECT_ITERS):
                mid = 0.5 * (lo + hi)
                if mid == lo or mid == hi:
                    break
                try:
                    mx, my, _ = attempt(px, py, f0x, f0y, mid)
                except (DomainError, _Stop):
                    hi = mid
                    continue
                if mx * mx + my * my >= r_stop2:
                    hi = mid
                    bx, by, bh = mx, my, mid
                else:
                    lo = mid
            push(s + bh, bx, by, *current(bx, by))
            code = REACHED_BOUNDARY
            break
        try:
            jx, jy = current(nx, ny)
        except DomainError as exc:
            if h <= h_min:
                push(s, px, py, *current(px, py))
                code = _FAIL_CODES.get(getattr(exc, "reason", "exclusion"),
                                       ENTERED_EXCLUSION_DISK)
                break
            h_prop = 0.5 * h
            continue
        jn = math.sqrt(jx * jx + jy * jy)
        s = s + h
        px, py = nx, ny
        if jn <= min_current:
            push(s, px, py, jx, jy)
            code = STAGNATION
            break
        f0x, f0y = dirsign * jx / jn, dirsign * jy / jn
        if s >= n_rec * record_ds - 1e-9 * record_ds:
            push(s, px, py, jx, jy)
            n_rec += 1
        if s >= max_arc - 1e-12 * max_arc:
            push(s, px, py, jx, jy)
            code = STEP_LIMIT
            break

    return (np.array(rec_s), np.array(rec_x), np.array(rec_y),
            np.array(rec_jx), np.array(rec_jy), code)
