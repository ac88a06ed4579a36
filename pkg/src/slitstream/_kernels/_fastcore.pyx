# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend: closed-form two-slit current and the adaptive
streamline tracer. Mirrors _driver.py statement for statement; keep the
two in sync (the test suite checks bit-level agreement)."""

from libc.math cimport cos, fabs, pow, sin, sqrt

import numpy as np

from ..errors import DomainError, SeedError

BACKEND_NAME = "compiled"

# Status codes: 0 ok, and the termination codes of _driver.
cdef int OK = 0
cdef int STAGNATION = 1
cdef int EXCLUSION = 2
cdef int BARRIER = 3
cdef int STEP_LIMIT = 4
cdef int BOUNDARY = 0

cdef double A21 = 0.25
cdef double A31 = 0.09375
cdef double A32 = 0.28125
cdef double A41 = 1932.0 / 2197.0
cdef double A42 = -7200.0 / 2197.0
cdef double A43 = 7296.0 / 2197.0
cdef double A51 = 439.0 / 216.0
cdef double A52 = -8.0
cdef double A53 = 3680.0 / 513.0
cdef double A54 = -845.0 / 4104.0
cdef double A61 = -8.0 / 27.0
cdef double A62 = 2.0
cdef double A63 = -3544.0 / 2565.0
cdef double A64 = 1859.0 / 4104.0
cdef double A65 = -11.0 / 40.0
cdef double B1 = 16.0 / 135.0
cdef double B3 = 6656.0 / 12825.0
cdef double B4 = 28561.0 / 56430.0
cdef double B5 = -9.0 / 50.0
cdef double B6 = 2.0 / 55.0
cdef double E1 = 1.0 / 360.0
cdef double E3 = -128.0 / 4275.0
cdef double E4 = -2197.0 / 75240.0
cdef double E5 = 1.0 / 50.0
cdef double E6 = 2.0 / 55.0

cdef double SAFETY = 0.9
cdef double MIN_FACTOR = 0.2
cdef double MAX_FACTOR = 5.0

cdef int BISECT_ITERS = 64


cdef inline int _current_c(double x, double y, double k, double d, double excl,
                           double* jx, double* jy) nogil:
    cdef double dy1, dy2, r1, r2, phi, c, s, sq, g1, g2, mx, my, pref
    if x == 0.0:
        return BARRIER
    dy1 = y - 0.5 * d
    dy2 = y + 0.5 * d
    r1 = sqrt(x * x + dy1 * dy1)
    r2 = sqrt(x * x + dy2 * dy2)
    if k * r1 < excl or k * r2 < excl:
        return EXCLUSION
    phi = k * (r2 - r1)
    c = cos(phi)
    s = sin(phi)
    sq = sqrt(r2 / r1)
    g1 = sq + c + s / (2.0 * k * r1)
    g2 = 1.0 / sq + c - s / (2.0 * k * r2)
    mx = g1 * (x / r1) + g2 * (x / r2)
    my = g1 * (dy1 / r1) + g2 * (dy2 / r2)
    pref = k / sqrt(r1 * r2)
    if x < 0.0:
        pref = -pref
    jx[0] = pref * mx
    jy[0] = pref * my
    return OK


def two_slit_current(double x, double y, double k, double d, double exclusion_radius):
    cdef double jx = 0.0, jy = 0.0
    cdef int st = _current_c(x, y, k, d, exclusion_radius, &jx, &jy)
    if st == BARRIER:
        raise DomainError("current undefined on the barrier line x = 0", reason="barrier")
    if st == EXCLUSION:
        raise DomainError(
            f"point ({x:g}, {y:g}) inside an exclusion disk", reason="exclusion")
    return jx, jy


cdef struct TraceCtx:
    double k
    double d
    double excl
    double dirsign
    double min_current


cdef inline int _tangent(TraceCtx* ctx, double px, double py,
                         double* fx, double* fy) nogil:
    cdef double jx = 0.0, jy = 0.0, jn
    cdef int st = _current_c(px, py, ctx.k, ctx.d, ctx.excl, &jx, &jy)
    if st != OK:
        return st
    jn = sqrt(jx * jx + jy * jy)
    if jn <= ctx.min_current:
        return STAGNATION
    fx[0] = ctx.dirsign * jx / jn
    fy[0] = ctx.dirsign * jy / jn
    return OK


cdef inline int _attempt(TraceCtx* ctx, double px, double py,
                         double f0x, double f0y, double h,
                         double rel_tol, double abs_tol,
                         double* nx_out, double* ny_out, double* norm_out) nogil:
    cdef double k2x = 0, k2y = 0, k3x = 0, k3y = 0, k4x = 0, k4y = 0
    cdef double k5x = 0, k5y = 0, k6x = 0, k6y = 0
    cdef double nx, ny, ex, ey, scx, scy, rx, ry
    cdef int st
    st = _tangent(ctx, px + h * (A21 * f0x), py + h * (A21 * f0y), &k2x, &k2y)
    if st != OK:
        return st
    st = _tangent(ctx, px + h * (A31 * f0x + A32 * k2x),
                  py + h * (A31 * f0y + A32 * k2y), &k3x, &k3y)
    if st != OK:
        return st
    st = _tangent(ctx, px + h * (A41 * f0x + A42 * k2x + A43 * k3x),
                  py + h * (A41 * f0y + A42 * k2y + A43 * k3y), &k4x, &k4y)
    if st != OK:
        return st
    st = _tangent(ctx, px + h * (A51 * f0x + A52 * k2x + A53 * k3x + A54 * k4x),
                  py + h * (A51 * f0y + A52 * k2y + A53 * k3y + A54 * k4y), &k5x, &k5y)
    if st != OK:
        return st
    st = _tangent(ctx, px + h * (A61 * f0x + A62 * k2x + A63 * k3x + A64 * k4x + A65 * k5x),
                  py + h * (A61 * f0y + A62 * k2y + A63 * k3y + A64 * k4y + A65 * k5y),
                  &k6x, &k6y)
    if st != OK:
        return st
    nx = px + h * (B1 * f0x + B3 * k3x + B4 * k4x + B5 * k5x + B6 * k6x)
    ny = py + h * (B1 * f0y + B3 * k3y + B4 * k4y + B5 * k5y + B6 * k6y)
    ex = h * (E1 * f0x + E3 * k3x + E4 * k4x + E5 * k5x + E6 * k6x)
    ey = h * (E1 * f0y + E3 * k3y + E4 * k4y + E5 * k5y + E6 * k6y)
    scx = abs_tol + rel_tol * (fabs(px) if fabs(px) > fabs(nx) else fabs(nx))
    scy = abs_tol + rel_tol * (fabs(py) if fabs(py) > fabs(ny) else fabs(ny))
    rx = ex / scx
    ry = ey / scy
    nx_out[0] = nx
    ny_out[0] = ny
    norm_out[0] = sqrt(0.5 * (rx * rx + ry * ry))
    return OK


def trace_two_slit(double x0, double y0, double k, double d, double exclusion_radius,
                   double dirsign, double rel_tol, double abs_tol, double record_ds,
                   double r_stop, double max_arc, double min_current, long max_steps):
    """Compiled twin of _driver.trace_current for the two-slit field."""
    cdef TraceCtx ctx
    ctx.k = k
    ctx.d = d
    ctx.excl = exclusion_radius
    ctx.dirsign = dirsign
    ctx.min_current = min_current

    cdef double j0x = 0.0, j0y = 0.0
    cdef int st = _current_c(x0, y0, k, d, exclusion_radius, &j0x, &j0y)
    if st != OK:
        raise SeedError(f"seed ({x0:g}, {y0:g}) outside the valid domain")
    cdef double jn0 = sqrt(j0x * j0x + j0y * j0y)
    if jn0 <= min_current:
        raise SeedError(f"seed ({x0:g}, {y0:g}) in a stagnant region (|j| = {jn0:g})")

    cdef Py_ssize_t cap = <Py_ssize_t>(max_arc / record_ds) + 8
    s_arr = np.empty(cap, dtype=np.float64)
    x_arr = np.empty(cap, dtype=np.float64)
    y_arr = np.empty(cap, dtype=np.float64)
    jx_arr = np.empty(cap, dtype=np.float64)
    jy_arr = np.empty(cap, dtype=np.float64)
    cdef double[::1] s_v = s_arr
    cdef double[::1] x_v = x_arr
    cdef double[::1] y_v = y_arr
    cdef double[::1] jx_v = jx_arr
    cdef double[::1] jy_v = jy_arr
    cdef Py_ssize_t n_pts = 1
    s_v[0] = 0.0
    x_v[0] = x0
    y_v[0] = y0
    jx_v[0] = j0x
    jy_v[0] = j0y

    cdef double s = 0.0
    cdef double px = x0, py = y0
    cdef double f0x = dirsign * j0x / jn0, f0y = dirsign * j0y / jn0
    cdef double h_prop = record_ds
    cdef double h_min = 1e-9 * record_ds
    cdef long n_rec = 1
    cdef long attempts = 0
    cdef int code = STEP_LIMIT
    cdef double r_stop2 = r_stop * r_stop

    cdef double h, target, nx = 0.0, ny = 0.0, norm = 0.0
    cdef double jx = 0.0, jy = 0.0, jn
    cdef double lo, hi, mid, mx = 0.0, my = 0.0, mnorm = 0.0
    cdef double bx, by, bh
    cdef int i, fail

    while True:
        if attempts >= max_steps:
            _current_c(px, py, k, d, exclusion_radius, &jx, &jy)
            n_pts = _push(s_v, x_v, y_v, jx_v, jy_v, n_pts, record_ds, s, px, py, jx, jy)
            code = STEP_LIMIT
            break
        attempts += 1
        target = n_rec * record_ds
        if max_arc < target:
            target = max_arc
        h = h_prop
        if target - s < h:
            h = target - s
        fail = _attempt(&ctx, px, py, f0x, f0y, h, rel_tol, abs_tol, &nx, &ny, &norm)
        if fail != OK:
            if h <= h_min:
                _current_c(px, py, k, d, exclusion_radius, &jx, &jy)
                n_pts = _push(s_v, x_v, y_v, jx_v, jy_v, n_pts, record_ds, s, px, py, jx, jy)
                code = fail
                break
            h_prop = 0.5 * h
            continue
        if norm > 1.0:
            if h <= h_min:
                _current_c(px, py, k, d, exclusion_radius, &jx, &jy)
                n_pts = _push(s_v, x_v, y_v, jx_v, jy_v, n_pts, record_ds, s, px, py, jx, jy)
                code = STEP_LIMIT
                break
            h_prop = h * _shrink_factor(norm)
            continue
        h_prop = h * _grow_factor(norm)
        if nx * nx + ny * ny >= r_stop2:
            lo = 0.0
            hi = h
            bx = nx
            by = ny
            bh = h
            for i in range(BISECT_ITERS):
                mid = 0.5 * (lo + hi)
                if mid == lo or mid == hi:
                    break
                fail = _attempt(&ctx, px, py, f0x, f0y, mid, rel_tol, abs_tol,
                                &mx, &my, &mnorm)
                if fail != OK:
                    hi = mid
                    continue
                if mx * mx + my * my >= r_stop2:
                    hi = mid
                    bx = mx
                    by = my
                    bh = mid
                else:
                    lo = mid
            _current_c(bx, by, k, d, exclusion_radius, &jx, &jy)
            n_pts = _push(s_v, x_v, y_v, jx_v, jy_v, n_pts, record_ds, s + bh, bx, by, jx, jy)
            code = BOUNDARY
            break
        fail = _current_c(nx, ny, k, d, exclusion_radius, &jx, &jy)
        if fail != OK:
            if h <= h_min:
                _current_c(px, py, k, d, exclusion_radius, &jx, &jy)
                n_pts = _push(s_v, x_v, y_v, jx_v, jy_v, n_pts, record_ds, s, px, py, jx, jy)
                code = fail
                break
            h_prop = 0.5 * h
            continue
        jn = sqrt(jx * jx + jy * jy)
        s = s + h
        px = nx
        py = ny
        if jn <= min_current:
            n_pts = _push(s_v, x_v, y_v, jx_v, jy_v, n_pts, record_ds, s, px, py, jx, jy)
            code = STAGNATION
            break
        f0x = dirsign * jx / jn
        f0y = dirsign * jy / jn
        if s >= n_rec * record_ds - 1e-9 * record_ds:
            n_pts = _push(s_v, x_v, y_v, jx_v, jy_v, n_pts, record_ds, s, px, py, jx, jy)
            n_rec += 1
        if s >= max_arc - 1e-12 * max_arc:
            n_pts = _push(s_v, x_v, y_v, jx_v, jy_v, n_pts, record_ds, s, px, py, jx, jy)
            code = STEP_LIMIT
            break

    return (s_arr[:n_pts], x_arr[:n_pts], y_arr[:n_pts],
            jx_arr[:n_pts], jy_arr[:n_pts], code)


cdef inline double _shrink_factor(double norm) nogil:
    cdef double f = SAFETY * pow(norm, -0.2)
    if f < MIN_FACTOR:
        f = MIN_FACTOR
    return f


cdef inline double _grow_factor(double norm) nogil:
    cdef double f
    if norm == 0.0:
        return MAX_FACTOR
    f = SAFETY * pow(norm, -0.2)
    if f < MIN_FACTOR:
        f = MIN_FACTOR
    if f > MAX_FACTOR:
        f = MAX_FACTOR
    return f


cdef inline Py_ssize_t _push(double[::1] s_v, double[::1] x_v, double[::1] y_v,
                             double[::1] jx_v, double[::1] jy_v, Py_ssize_t n,
                             double record_ds, double s, double px, double py,
                             double jx, double jy) nogil:
    if s <= s_v[n - 1] + 1e-12 * record_ds:
        return n
    if n >= s_v.shape[0]:
        return n
    s_v[n] = s
    x_v[n] = px
    y_v[n] = py
    jx_v[n] = jx
    jy_v[n] = jy
    return n + 1
