"""Command-line front end.

Subcommands: ``field`` (grid export), ``streamlines`` (family trace +
optional SVG), ``radial`` (envelope validation sweep), ``validate``
(cross-check suite). Exit codes: 0 success, 1 validation/run failure,
2 configuration error, 3 I/O error. Numeric CSV fields carry 17
significant digits, so identical configurations reproduce byte-identical
files and every value round-trips through text.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import svgfig, trace as tr, validation
from .config import ConfigError, build_config
from .current import DoubleSlitCurrent, current_two_slit, quantum_potential_value
from .errors import DegenerateDensityError, DomainError, SeedError
from .model import DoubleSlitWave, SlitGeometry, psi_double_slit
from .radial import solve_radial


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slitstream",
        description="Supercurrent fields and streamlines for one and two slits "
                    "in a planar superconductor (all lengths in k*r units).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", metavar="PATH", help="flat key = value config file")
        p.add_argument("--kd", type=float, help="dimensionless slit separation k*d")
        p.add_argument("--out", help="output CSV path")
        p.add_argument("--seed", type=int, help="pseudo-random seed for sampling")
        p.add_argument("--jobs", type=int, help="worker processes for family tracing")

    p_field = sub.add_parser("field", help="export psi, n, j, Q on a grid to CSV")
    common(p_field)
    p_field.add_argument("--xmax", type=float, help="grid x upper bound (k*r units)")

    p_lines = sub.add_parser("streamlines", help="trace a streamline family to CSV/SVG")
    common(p_lines)
    p_lines.add_argument("--x0", type=float, help="seed line position k*x0")
    p_lines.add_argument("--seeds", help="explicit comma-separated seed heights k*y0")
    p_lines.add_argument("--svg", help="also render the family to this SVG file")
    p_lines.add_argument("--k", type=float, dest="k_scale",
                         help="wavenumber used only to relabel SVG axes")

    p_radial = sub.add_parser("radial", help="integrate the radial envelope equation")
    common(p_radial)
    p_radial.add_argument("--k-over-kappa", dest="k_over_kappa",
                          help="comma-separated sweep values in (0, 1]")

    p_val = sub.add_parser("validate", help="run the cross-check suite")
    common(p_val)
    p_val.add_argument("--fd-step", type=float, dest="fd_step",
                       help="finite-difference step override for the oracle checks")
    p_val.add_argument("--points", type=int, dest="validate_points",
                       help="sample count for the pointwise checks")
    p_val.add_argument("--quick", action="store_true",
                       help="skip the integrator-convergence re-trace")
    return parser


_OVERRIDE_KEYS = ("kd", "out", "seed", "jobs", "xmax", "x0", "seeds", "svg",
                  "k_scale", "k_over_kappa", "fd_step", "validate_points")
_KEY_RENAMES = {"xmax": "x_max", "x0": "seed_x0"}


def _config_from_args(args) -> "RunConfig":
    overrides = {}
    for key in _OVERRIDE_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            overrides[_KEY_RENAMES.get(key, key)] = value
    return build_config(args.config, overrides)


def cmd_field(cfg) -> int:
    geom = SlitGeometry(d=cfg.kd, exclusion_radius=cfg.exclusion_radius)
    wave = DoubleSlitWave(1.0, geom)
    xs = np.linspace(cfg.x_min, cfg.x_max, cfg.nx)
    ys = np.linspace(cfg.y_min, cfg.y_max, cfg.ny)
    out = cfg.out or "field.csv"
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "y", "re_psi", "im_psi", "n", "jx", "jy", "Q", "valid"])
        for y in ys:
            for x in xs:
                x_f, y_f = float(x), float(y)
                try:
                    psi = psi_double_slit(x_f, y_f, 1.0, geom)
                    j, _ = current_two_slit(x_f, y_f, 1.0, geom)
                except DomainError:
                    writer.writerow([_fmt(x_f), _fmt(y_f), "", "", "", "", "", "", 0])
                    continue
                try:
                    q = _fmt(quantum_potential_value(wave, x_f, y_f,
                                                     density_floor=cfg.density_floor))
                except (DegenerateDensityError, DomainError):
                    q = ""
                writer.writerow([
                    _fmt(x_f), _fmt(y_f), _fmt(psi.real), _fmt(psi.imag),
                    _fmt(abs(psi) ** 2), _fmt(j[0]), _fmt(j[1]), q, 1,
                ])
    print(f"wrote {cfg.nx * cfg.ny} grid points to {out}")
    return 0


def _integrator_config(cfg) -> tr.IntegratorConfig:
    return tr.IntegratorConfig(
        rel_tol=cfg.rel_tol, abs_tol=cfg.abs_tol, r_stop=cfg.r_stop,
        max_arc_length=cfg.max_arc_length, min_current=cfg.min_current,
        max_steps=cfg.max_steps, record_interval=cfg.record_interval)


def _seed_heights(cfg, field) -> np.ndarray:
    if cfg.seeds:
        return np.array(cfg.seeds, dtype=float)
    if cfg.seed_spacing == "uniform":
        return np.linspace(cfg.seed_y_min, cfg.seed_y_max, cfg.n_seeds)
    return tr.equal_flux_seed_line(cfg.seed_x0, cfg.seed_y_min, cfg.seed_y_max,
                                   cfg.n_seeds, field)


def _trace_one(task):
    kd, exclusion_radius, x0, y0, direction, icfg_kwargs = task
    field = DoubleSlitCurrent(1.0, SlitGeometry(d=kd, exclusion_radius=exclusion_radius))
    try:
        line = tr.integrate_streamline(tr.Seed(x0, y0, direction), field,
                                       tr.IntegratorConfig(**icfg_kwargs))
    except SeedError as exc:
        return None, str(exc)
    return line, None


def cmd_streamlines(cfg) -> int:
    geom = SlitGeometry(d=cfg.kd, exclusion_radius=cfg.exclusion_radius)
    field = DoubleSlitCurrent(1.0, geom)
    icfg = _integrator_config(cfg)
    try:
        y0s = _seed_heights(cfg, field)
    except (ValueError, DomainError) as exc:
        raise ConfigError(f"seed line: {exc}") from exc

    if cfg.jobs > 1:
        icfg_kwargs = {f: getattr(icfg, f) for f in
                       ("rel_tol", "abs_tol", "r_stop", "max_arc_length",
                        "min_current", "max_steps", "record_interval")}
        tasks = [(cfg.kd, cfg.exclusion_radius, cfg.seed_x0, float(y0),
                  cfg.direction, icfg_kwargs) for y0 in y0s]
        family = tr.FamilyResult()
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            for i, (line, error) in enumerate(pool.map(_trace_one, tasks)):
                family.streamlines.append(line)
                if error is not None:
                    family.errors.append((i, error))
    else:
        family = tr.trace_family(cfg.seed_x0, y0s, field, icfg,
                                 direction=cfg.direction)
    for index, message in family.errors:
        print(f"warning: seed {index} skipped: {message}", file=sys.stderr)

    out = cfg.out or "streamlines.csv"
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["streamline_id", "point_index", "s", "x", "y",
                         "jx", "jy", "termination"])
        for sid, line in enumerate(family.streamlines):
            if line is None:
                continue
            for i in range(line.n_points):
                writer.writerow([sid, i, _fmt(line.s[i]), _fmt(line.x[i]),
                                 _fmt(line.y[i]), _fmt(line.jx[i]),
                                 _fmt(line.jy[i]), line.termination])
    completed = family.completed
    print(f"wrote {len(completed)} streamlines to {out}"
          + (f" ({len(family.errors)} seeds skipped)" if family.errors else ""))
    if cfg.svg:
        doc = svgfig.render_streamlines(
            completed, geom, title=f"two-slit current streamlines, kd = {cfg.kd:g}",
            k_scale=cfg.k_scale)
        with open(cfg.svg, "w", encoding="utf-8") as fh:
            fh.write(doc)
        print(f"wrote figure to {cfg.svg}")
    return 0 if completed else 1


def cmd_radial(cfg) -> int:
    out = cfg.out or "radial.csv"
    summaries = []
    failed = False
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["k_over_kappa", "r_tilde", "re_f", "im_f", "abs_f", "arg_f"])
        for q in cfg.k_over_kappa:
            try:
                sol = solve_radial(cfg.r_start, cfg.r_end, q, cfg.nonlinear_coeff,
                                   n_samples=cfg.radial_samples)
            except Exception as exc:  # solver failure is reported, not fatal
                summaries.append(f"# flatness,{_fmt(q)},failed: {exc}")
                failed = True
                continue
            for state in sol.samples:
                writer.writerow([
                    _fmt(q), _fmt(state.r_tilde), _fmt(state.f.real),
                    _fmt(state.f.imag), _fmt(abs(state.f)),
                    _fmt(cmath.phase(state.f)),
                ])
            summaries.append(f"# flatness,{_fmt(q)},{_fmt(sol.flatness)}")
        for line in summaries:
            fh.write(line + "\n")
    for line in summaries:
        print(line.lstrip("# "))
    print(f"wrote radial sweep to {out}")
    return 1 if failed else 0


def cmd_validate(cfg, quick: bool = False) -> int:
    results = validation.run_validation(
        kd=cfg.kd, seed=cfg.seed, fd_step=cfg.fd_step or None,
        n_points=cfg.validate_points, quick=quick)
    for result in results:
        print(result.line())
    n_fail = sum(1 for r in results if not r.passed)
    print(f"{len(results) - n_fail}/{len(results)} checks passed")
    return 1 if n_fail else 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    try:
        if args.command == "field":
            return cmd_field(cfg)
        if args.command == "streamlines":
            return cmd_streamlines(cfg)
        if args.command == "radial":
            return cmd_radial(cfg)
        return cmd_validate(cfg, quick=getattr(args, "quick", False))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
