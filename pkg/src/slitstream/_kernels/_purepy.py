"""Pure-Python backend: same algorithms as the compiled core."""

from __future__ import annotations

from ..current import two_slit_current_xy
from . import _driver

BACKEND_NAME = "python"


def two_slit_current(x, y, k, d, exclusion_radius):
    return two_slit_current_xy(x, y, k, d, exclusion_radius)


def trace_two_slit(x0, y0, k, d, exclusion_radius, dirsign, rel_tol, abs_tol,
                   record_ds, r_stop, max_arc, min_current, max_steps):
    def current(px, py):
        return two_slit_current_xy(px, py, k, d, exclusion_radius)

    return _driver.trace_current(current, x0, y0, dirsign, rel_tol, abs_tol,
                                 record_ds, r_stop, max_arc, min_current, max_steps)
