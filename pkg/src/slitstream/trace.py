"""Streamline integration through planar current fields and the wiggle /
fringe-angle diagnostics extracted from the traced families.

Streamlines are integrated in arc length, dr/ds = j/|j|, which traces the
same curves as dy/dx = jy/jx but stays regular where jx changes sign
during wiggles. Configuration lengths (record interval, stopping radius,
arc budget) are given in k*r units and scaled by the field's wavenumber.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _kernels
from ._kernels import _driver
from .current import DoubleSlitCurrent
from .errors import SeedError

TERMINATION_REASONS = tuple(_driver.CODE_REASONS[c] for c in sorted(_driver.CODE_REASONS))


@dataclass(frozen=True)
class Seed:
    """Streamline start point; downstream follows j, upstream runs against it."""

    x0: float
    y0: float
    direction: str = "downstream"

    def __post_init__(self):
        if self.direction not in ("downstream", "upstream"):
            raise ValueError(f"direction must be downstream or upstream, got {self.direction!r}")


@dataclass(frozen=True)
class IntegratorConfig:
    """Adaptive-integration knobs; lengths are in k*r units."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-8
    r_stop: float = 500.0
    max_arc_length: float = 4000.0
    min_current: float = 1e-9
    max_steps: int = 500_000
    record_interval: float = 0.1

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "r_stop", "max_arc_length",
                     "min_current", "record_interval"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.max_steps <= 0:
            raise ValueError("max_steps must be positive")


@dataclass
class Streamline:
    """Traced polyline with the local current recorded at every point."""

    seed: Seed
    termination: str
    k: float
    s: np.ndarray
    x: np.ndarray
    y: np.ndarray
    jx: np.ndarray
    jy: np.ndarray

    @property
    def n_points(self) -> int:
        return len(self.s)

    @property
    def arc_length(self) -> float:
        return float(self.s[-1])

    def points(self):
        """Iterate (x, y, jx, jy, s) tuples."""
        return zip(self.x, self.y, self.jx, self.jy, self.s)

    def radii(self) -> np.ndarray:
        return np.sqrt(self.x ** 2 + self.y ** 2)


@dataclass
class FamilyResult:
    """Per-seed traces in seed order; failed seeds hold None plus an error entry."""

    streamlines: list = dc_field(default_factory=list)
    errors: list = dc_field(default_factory=list)

    @property
    def completed(self):
        return [line for line in self.streamlines if line is not None]


def integrate_streamline(seed: Seed, field, cfg: IntegratorConfig | None = None) -> Streamline:
    """Integrate one streamline until a termination condition fires.

    Dispatches to the compiled kernel for the closed-form two-slit field;
    any other field only needs a `current(x, y) -> (jx, jy)` method and a
    `k` attribute.
    """
    if cfg is None:
        cfg = IntegratorConfig()
    k = field.k
    dirsign = 1.0 if seed.direction == "downstream" else -1.0
    scale_args = (cfg.rel_tol, cfg.abs_tol, cfg.record_interval / k, cfg.r_stop / k,
                  cfg.max_arc_length / k, cfg.min_current, cfg.max_steps)
    if isinstance(field, DoubleSlitCurrent):
        out = _kernels.trace_two_slit(seed.x0, seed.y0, field.k, field.geom.d,
                                      field.geom.exclusion_radius, dirsign, *scale_args)
    else:
        out = _driver.trace_current(field.current, seed.x0, seed.y0, dirsign, *scale_args)
    s, x, y, jx, jy, code = out
    return Streamline(seed=seed, termination=_driver.CODE_REASONS[code], k=k,
                      s=s, x=x, y=y, jx=jx, jy=jy)


def trace_family(x0: float, y0_values, field, cfg: IntegratorConfig | None = None,
                 direction: str = "downstream") -> FamilyResult:
    """Trace one streamline per seed y0; failures are collected, not fatal."""
    result = FamilyResult()
    for i, y0 in enumerate(y0_values):
        try:
            line = integrate_streamline(Seed(x0, float(y0), direction), field, cfg)
        except SeedError as exc:
            result.streamlines.append(None)
            result.errors.append((i, str(exc)))
        else:
            result.streamlines.append(line)
    return result


def asymptotic_angle(line: Streamline, r_min: float) -> float:
    """Polar angle atan2(y, x) of the final point, required beyond r_min."""
    if line.n_points == 0:
        raise ValueError("empty streamline")
    xf = float(line.x[-1])
    yf = float(line.y[-1])
    if math.sqrt(xf * xf + yf * yf) * line.k < r_min:
        raise ValueError(
            f"streamline ends at k*r = {math.sqrt(xf * xf + yf * yf) * line.k:g}, "
            f"short of k*r = {r_min:g}"
        )
    return math.atan2(yf, xf)


def signed_curvature(line: Streamline) -> np.ndarray:
    """Signed curvature estimate at interior recorded points."""
    if line.n_points < 3:
        raise ValueError("streamline too short for curvature (need >= 3 points)")
    dx = np.diff(line.x)
    dy = np.diff(line.y)
    ds = np.diff(line.s)
    theta = np.unwrap(np.arctan2(dy, dx))
    mids = 0.5 * (ds[1:] + ds[:-1])
    return np.diff(theta) / mids


def _running_mean(values: np.ndarray, window: int) -> np.ndarray:
    """Centered running mean, shrinking the window near the ends."""
    n = len(values)
    half = window // 2
    csum = np.concatenate(([0.0], np.cumsum(values)))
    lo = np.maximum(np.arange(n) - half, 0)
    hi = np.minimum(np.arange(n) + half + 1, n)
    return (csum[hi] - csum[lo]) / (hi - lo)


#: Curvature smoothing window for wiggle counting, in wavelengths. A
#: quarter wavelength suppresses discretization wobble while resolving
#: the fringe-crossing bends, whose spacing is of wavelength order.
WIGGLE_SMOOTHING_WAVELENGTHS = 0.25


def wiggle_count(line: Streamline, curvature_floor_scale: float = 1e-6,
                 smoothing_wavelengths: float = WIGGLE_SMOOTHING_WAVELENGTHS) -> int:
    """Sign changes of the smoothed signed curvature along the polyline.

    Curvature is averaged over smoothing_wavelengths * 2*pi/k of arc, and
    values below curvature_floor_scale*k are treated as straight-line
    noise rather than a sign.
    """
    kappa = signed_curvature(line)
    ds = float(np.median(np.diff(line.s)))
    window = max(1, int(round(smoothing_wavelengths * 2.0 * math.pi / line.k / ds)))
    if window > 1:
        kappa = _running_mean(kappa, window)
    floor = curvature_floor_scale * line.k
    signs = np.sign(kappa)
    signs[np.abs(kappa) < floor] = 0
    signs = signs[signs != 0]
    if len(signs) < 2:
        return 0
    return int(np.sum(signs[1:] != signs[:-1]))


def equal_flux_seed_line(x0: float, y_lo: float, y_hi: float, n: int, field,
                         n_grid: int = 8001) -> np.ndarray:
    """Seed heights on the line x = x0 carrying equal downstream flux each.

    Streamline density then encodes current density, the usual convention
    for flow figures. The cumulative flux of jx through the segment is
    inverted at the n midpoint quantiles; for a symmetric span the seeds
    are symmetrized so mirror pairs are exact. Requires jx > 0 on the
    whole segment.
    """
    if n <= 0:
        return np.array([])
    ys = np.linspace(y_lo, y_hi, n_grid)
    jx = np.array([field.current(x0, y)[0] for y in ys])
    if np.any(jx <= 0.0):
        raise ValueError("flux seeding needs jx > 0 along the whole seed line")
    flux = np.concatenate(([0.0], np.cumsum(0.5 * (jx[1:] + jx[:-1]) * np.diff(ys))))
    quantiles = (np.arange(n) + 0.5) / n * flux[-1]
    seeds = np.interp(quantiles, flux, ys)
    if y_lo == -y_hi:
        seeds = 0.5 * (seeds - seeds[::-1])
    return seeds


def fringe_angles(kd: float, orders=(-3, -2, -1, 0, 1, 2, 3)) -> np.ndarray:
    """Far-field constructive-interference directions arcsin(2*pi*n/(k*d)).

    Orders with |2*pi*n| > k*d do not propagate and are omitted.
    """
    out = []
    for n in orders:
        sine = 2.0 * math.pi * n / kd
        if abs(sine) <= 1.0:
            out.append(math.asin(sine))
    return np.array(out)


def angle_clusters(angles, gap: float = 0.1):
    """Group sorted angles into clusters split at gaps larger than `gap`.

    Returns the list of cluster mean angles; used to locate the fringe
    directions a traced family bunches into.
    """
    angles = np.sort(np.asarray(angles, dtype=float))
    if len(angles) == 0:
        return []
    centers = []
    start = 0
    for i in range(1, len(angles) + 1):
        if i == len(angles) or angles[i] - angles[i - 1] > gap:
            centers.append(float(np.mean(angles[start:i])))
            start = i
    return centers
