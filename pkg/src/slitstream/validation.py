"""Cross-check suite: every analytic result is pitted against an
independent numerical route, at the stated tolerance.

Each check returns a CheckResult whose line format is
``name measured tolerance PASS|FAIL``; the same functions back the
``validate`` CLI subcommand and the acceptance test module. Sampling is
pseudo-random with a fixed default seed so runs are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import trace as tr
from .current import (
    DoubleSlitCurrent,
    SingleSlitCurrent,
    current_generic,
    current_two_slit,
    divergence,
    quantum_force_residual,
    quantum_potential_value,
    two_slit_current_xy,
    velocity,
)
from .model import DoubleSlitWave, SingleSlitWave, SlitGeometry, psi_double_slit, slit_radii

DEFAULT_SEED = 12345

#: Default Fig.-2 family protocol: equal-flux seeds on the line k*x = 1.
FAMILY_X0 = 1.0
FAMILY_SPAN = 13.0
FAMILY_SEEDS = 41

#: Spec tolerances, pinned here and asserted by the acceptance suite.
TOL_CLOSED_VS_GENERIC = 1e-6
TOL_DIVERGENCE = 1e-3
TOL_SYMMETRY = 1e-12
TOL_ON_AXIS = 1e-6
TOL_SINGLE_SLIT_ANGLE = 1e-6
TOL_SINGLE_SLIT_SPEED = 1e-10
TOL_FRINGE_ANGLE = 0.05
MIN_WIGGLY_LINES = 10
WIGGLES_REQUIRED = 3
TOL_FORCE_RESIDUAL = 0.02
FORCE_RESIDUAL_QUANTILE = 0.95
TOL_RADIAL_FLATNESS = 0.01
TOL_CONVERGENCE_SHIFT = 1e-6
FD_RATIO_LO, FD_RATIO_HI = 3.5, 4.5

FD_STEP_WAVELENGTHS = 1e-5  # oracle step for the closed-form cross-check
FD_CONVERGENCE_STEP = 0.02  # coarse step for the second-order ratio check


@dataclass
class CheckResult:
    name: str
    measured: float
    tolerance: float
    passed: bool
    note: str = ""

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.name} {self.measured:.6g} {self.tolerance:.6g} {verdict}"


def sample_band_points(rng, n, geom: SlitGeometry, r_lo: float, r_hi: float,
                       box: float = 150.0, min_abs_x: float = 0.05):
    """Uniform points with both slit distances in [r_lo, r_hi] (k = 1 units).

    Points closer than min_abs_x to the barrier are rejected so finite
    difference stencils never straddle it.
    """
    pts = []
    while len(pts) < n:
        x = rng.uniform(-box, box)
        y = rng.uniform(-box, box)
        if abs(x) < min_abs_x:
            continue
        r1, r2 = slit_radii(x, y, geom)
        if r_lo <= r1 <= r_hi and r_lo <= r2 <= r_hi:
            pts.append((x, y))
    return pts


def default_family(kd: float = 20.0, exclusion_radius: float = 1.0,
                   cfg: tr.IntegratorConfig | None = None):
    """Trace the default equal-flux Fig.-2 family (41 streamlines, kd = 20)."""
    geom = SlitGeometry(d=kd, exclusion_radius=exclusion_radius)
    field = DoubleSlitCurrent(1.0, geom)
    seeds = tr.equal_flux_seed_line(FAMILY_X0, -FAMILY_SPAN, FAMILY_SPAN,
                                    FAMILY_SEEDS, field)
    return tr.trace_family(FAMILY_X0, seeds, field, cfg), geom, field


def check_closed_vs_generic(n_points: int = 1000, kd: float = 20.0,
                            seed: int = DEFAULT_SEED,
                            fd_step: float | None = None) -> CheckResult:
    """Closed-form current vs finite differences of the defining formula."""
    geom = SlitGeometry(d=kd)
    wave = DoubleSlitWave(1.0, geom)
    h = fd_step if fd_step is not None else FD_STEP_WAVELENGTHS * 2.0 * math.pi
    rng = np.random.default_rng(seed)
    worst = 0.0
    for x, y in sample_band_points(rng, n_points, geom, 5.0, 200.0):
        ja = np.array(two_slit_current_xy(x, y, 1.0, geom.d))
        jb = current_generic(wave, x, y, fd_step=h)
        worst = max(worst, float(np.hypot(*(ja - jb)) / np.hypot(*jb)))
    return CheckResult("closed_form_vs_generic_current", worst,
                       TOL_CLOSED_VS_GENERIC, worst <= TOL_CLOSED_VS_GENERIC)


def check_divergence(n_points: int = 500, kd: float = 20.0,
                     seed: int = DEFAULT_SEED) -> CheckResult:
    """Local conservation |div j| <= tol * k * |j| in the far band."""
    geom = SlitGeometry(d=kd)
    wave = DoubleSlitWave(1.0, geom)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for x, y in sample_band_points(rng, n_points, geom, 50.0, 200.0):
        dv = divergence(wave, x, y)
        jn = float(np.hypot(*two_slit_current_xy(x, y, 1.0, geom.d)))
        worst = max(worst, abs(dv) / jn)
    return CheckResult("current_conservation", worst, TOL_DIVERGENCE,
                       worst <= TOL_DIVERGENCE)


def check_mirror_symmetry(n_points: int = 300, kd: float = 20.0,
                          seed: int = DEFAULT_SEED) -> CheckResult:
    """jx, n, Q even and jy odd under y -> -y, at round-off level."""
    geom = SlitGeometry(d=kd)
    wave = DoubleSlitWave(1.0, geom)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for x, y in sample_band_points(rng, n_points, geom, 2.0, 200.0):
        ja, _ = current_two_slit(x, y, 1.0, geom)
        jb, _ = current_two_slit(x, -y, 1.0, geom)
        na = abs(psi_double_slit(x, y, 1.0, geom)) ** 2
        nb = abs(psi_double_slit(x, -y, 1.0, geom)) ** 2
        qa = quantum_potential_value(wave, x, y)
        qb = quantum_potential_value(wave, x, -y)
        worst = max(worst, abs(ja[0] - jb[0]), abs(ja[1] + jb[1]),
                    abs(na - nb), abs(qa - qb))
    return CheckResult("mirror_symmetry", worst, TOL_SYMMETRY, worst <= TOL_SYMMETRY)


def check_on_axis_confinement(kd: float = 20.0) -> CheckResult:
    """A seed on the symmetry axis must stay on it."""
    geom = SlitGeometry(d=kd)
    field = DoubleSlitCurrent(1.0, geom)
    line = tr.integrate_streamline(tr.Seed(2.0, 0.0), field)
    worst = float(np.max(np.abs(line.y)))
    return CheckResult("on_axis_confinement", worst, TOL_ON_AXIS, worst <= TOL_ON_AXIS)


def check_single_slit_radial() -> CheckResult:
    """One-slit streamlines are radial rays from the slit."""
    field = SingleSlitCurrent(1.0)
    worst = 0.0
    for ang in (-1.2, -0.6, 0.0, 0.4, 1.0, 1.4):
        seed = tr.Seed(3.0 * math.cos(ang), 3.0 * math.sin(ang))
        if seed.x0 <= 0:
            continue
        line = tr.integrate_streamline(seed, field)
        theta = np.arctan2(line.y, line.x)
        worst = max(worst, float(np.max(np.abs(theta - theta[0]))))
    return CheckResult("single_slit_radial", worst, TOL_SINGLE_SLIT_ANGLE,
                       worst <= TOL_SINGLE_SLIT_ANGLE)


def check_single_slit_speed(n_points: int = 200, seed: int = DEFAULT_SEED) -> CheckResult:
    """Carrier speed in the one-slit field equals k everywhere."""
    wave = SingleSlitWave(1.0)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_points):
        r = rng.uniform(2.0, 400.0)
        a = rng.uniform(-1.5, 1.5)
        v = velocity(wave, r * math.cos(a), r * math.sin(a))
        worst = max(worst, abs(float(np.hypot(*v)) - 1.0))
    return CheckResult("single_slit_speed", worst, TOL_SINGLE_SLIT_SPEED,
                       worst <= TOL_SINGLE_SLIT_SPEED)


def check_family_non_crossing(family) -> CheckResult:
    """y-order of the family is preserved at every common x station."""
    lines = family.completed
    violations = 0
    min_gap = math.inf
    for a, b in zip(lines[:-1], lines[1:]):
        x_lo = max(a.x[0], b.x[0])
        x_hi = min(a.x[-1], b.x[-1])
        xs = np.linspace(x_lo, x_hi, 400)
        gap = float(np.min(np.interp(xs, b.x, b.y) - np.interp(xs, a.x, a.y)))
        min_gap = min(min_gap, gap)
        if gap <= 0.0:
            violations += 1
    return CheckResult("family_non_crossing", violations, 0, violations == 0,
                       note=f"min adjacent gap {min_gap:.4g}")


def check_family_wiggles(family) -> CheckResult:
    counts = [tr.wiggle_count(line) for line in family.completed]
    n_wiggly = sum(1 for c in counts if c >= WIGGLES_REQUIRED)
    return CheckResult("wiggling_lines", n_wiggly, MIN_WIGGLY_LINES,
                       n_wiggly >= MIN_WIGGLY_LINES,
                       note=f">= {WIGGLES_REQUIRED} curvature sign changes")


def check_family_fringe_angles(family, kd: float = 20.0) -> CheckResult:
    """Asymptotic-angle clusters sit on the two-source interference maxima."""
    angles = np.array(sorted(tr.asymptotic_angle(line, 400.0)
                             for line in family.completed))
    worst = 0.0
    for t in tr.fringe_angles(kd):
        members = angles[np.abs(angles - t) <= 0.16]
        if len(members) == 0:
            return CheckResult("fringe_angle_clusters", math.inf, TOL_FRINGE_ANGLE,
                               False, note=f"no trajectories near angle {t:+.3f}")
        worst = max(worst, abs(float(np.median(members)) - t))
    return CheckResult("fringe_angle_clusters", worst, TOL_FRINGE_ANGLE,
                       worst <= TOL_FRINGE_ANGLE)


def check_force_balance(family, geom: SlitGeometry, stride: int = 25,
                        r_min: float = 50.0, visibility_floor: float = 0.1) -> CheckResult:
    """Steady force balance (v.grad)v = -grad Q along the traced family.

    Sampled every `stride` recorded points with both slit distances beyond
    r_min and local visibility above visibility_floor (away from nodes);
    the residual uses the strict max(|a|, |grad Q|) normalization.
    """
    wave = DoubleSlitWave(1.0, geom)
    residuals = []
    for line in family.completed:
        for i in range(0, line.n_points, stride):
            x, y = float(line.x[i]), float(line.y[i])
            r1, r2 = slit_radii(x, y, geom)
            if min(r1, r2) < r_min:
                continue
            n = abs(psi_double_slit(x, y, 1.0, geom)) ** 2
            envelope = 0.5 * (1.0 / math.sqrt(r1) + 1.0 / math.sqrt(r2)) ** 2
            if n / envelope < visibility_floor:
                continue
            residuals.append(quantum_force_residual(wave, x, y, force_floor=0.0))
    q95 = float(np.percentile(residuals, 100.0 * FORCE_RESIDUAL_QUANTILE))
    return CheckResult("quantum_force_balance_p95", q95, TOL_FORCE_RESIDUAL,
                       q95 <= TOL_FORCE_RESIDUAL,
                       note=f"{len(residuals)} sample points")


def check_radial_flatness() -> CheckResult:
    from .radial import solve_radial

    sol = solve_radial(10.0, 200.0, 1.0, 0.0)
    return CheckResult("radial_flatness", sol.flatness, TOL_RADIAL_FLATNESS,
                       sol.flatness <= TOL_RADIAL_FLATNESS)


def check_radial_monotone() -> CheckResult:
    from .radial import solve_radial

    flats = [solve_radial(20.0, 200.0, q, 0.0).flatness for q in (0.90, 0.95, 0.99)]
    decreasing = flats[0] > flats[1] > flats[2]
    spread = flats[0] - flats[2]
    return CheckResult("radial_flatness_monotone", spread, 0, decreasing,
                       note=f"flatness {['%.4f' % f for f in flats]}")


def _family_shift(fam_a, fam_b) -> float:
    worst = 0.0
    for a, b in zip(fam_a.completed, fam_b.completed):
        m = min(a.n_points, b.n_points)
        for i in range(m):
            if abs(a.s[i] - b.s[i]) > 1e-6:
                break
            worst = max(worst, math.hypot(a.x[i] - b.x[i], a.y[i] - b.y[i]))
    return worst


def check_integrator_convergence(family, geom: SlitGeometry,
                                 cfg: tr.IntegratorConfig | None = None) -> CheckResult:
    """Halving the tolerances must not move any recorded point visibly."""
    base = cfg if cfg is not None else tr.IntegratorConfig()
    field = DoubleSlitCurrent(1.0, geom)
    halved = tr.IntegratorConfig(rel_tol=base.rel_tol / 2, abs_tol=base.abs_tol / 2,
                                 r_stop=base.r_stop, max_arc_length=base.max_arc_length,
                                 min_current=base.min_current, max_steps=base.max_steps,
                                 record_interval=base.record_interval)
    seeds = [line.seed.y0 for line in family.completed]
    fam_b = tr.trace_family(FAMILY_X0, seeds, field, halved)
    worst = _family_shift(family, fam_b)
    return CheckResult("integrator_convergence", worst, TOL_CONVERGENCE_SHIFT,
                       worst <= TOL_CONVERGENCE_SHIFT)


def check_fd_convergence(kd: float = 20.0) -> CheckResult:
    """Central differences converge at second order (error ratio 4 +- 0.5)."""
    geom = SlitGeometry(d=kd)
    wave = DoubleSlitWave(1.0, geom)
    h = FD_CONVERGENCE_STEP
    ratios = []
    for x, y in ((7.0, 3.0), (20.0, -12.0), (45.0, 30.0), (60.0, 5.0)):
        j_exact = np.array(two_slit_current_xy(x, y, 1.0, geom.d))
        e1 = float(np.linalg.norm(current_generic(wave, x, y, fd_step=h) - j_exact))
        e2 = float(np.linalg.norm(current_generic(wave, x, y, fd_step=h / 2) - j_exact))
        ratios.append(e1 / e2)
        q_exact = quantum_potential_value(wave, x, y)
        q1 = quantum_potential_value(wave, x, y, fd_step=h)
        q2 = quantum_potential_value(wave, x, y, fd_step=h / 2)
        ratios.append(abs(q1 - q_exact) / abs(q2 - q_exact))
    off = max(abs(r - 4.0) for r in ratios)
    return CheckResult("fd_second_order_ratio", off, FD_RATIO_HI - 4.0,
                       all(FD_RATIO_LO <= r <= FD_RATIO_HI for r in ratios),
                       note=f"worst |ratio - 4| over {len(ratios)} ratios")


def run_validation(kd: float = 20.0, seed: int = DEFAULT_SEED,
                   fd_step: float | None = None, n_points: int = 1000,
                   quick: bool = False) -> list[CheckResult]:
    """Run the full cross-check suite; `fd_step` overrides the oracle step."""
    results = [
        check_closed_vs_generic(n_points=n_points, kd=kd, seed=seed, fd_step=fd_step),
        check_divergence(n_points=max(50, n_points // 2), kd=kd, seed=seed),
        check_mirror_symmetry(n_points=max(50, n_points // 3), kd=kd, seed=seed),
        check_on_axis_confinement(kd=kd),
        check_single_slit_radial(),
        check_single_slit_speed(seed=seed),
        check_radial_flatness(),
        check_radial_monotone(),
        check_fd_convergence(kd=kd),
    ]
    family, geom, _ = default_family(kd=kd)
    results.append(check_family_non_crossing(family))
    results.append(check_family_wiggles(family))
    results.append(check_family_fringe_angles(family, kd=kd))
    results.append(check_force_balance(family, geom))
    if not quick:
        results.append(check_integrator_convergence(family, geom))
    return results
