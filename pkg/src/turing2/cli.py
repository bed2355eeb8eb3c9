"""Command-line front end.

Exit codes: 0 ok, 1 failed expectation/verification, 2 config, 3 existence,
4 not Turing-capable, 5 hard case, 10-12 simulation failures.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import (convention_from, get, load_config, params_from, section, sim_config_from)
from .errors import ConfigError, ExistenceViolated, OnBoundary, Turing2Error
from .model import reaction_taylor, steady_state, validate_params
from .normal_form import normal_form
from .outputs import write_csv, write_json
from .pde import classify_pattern, profile_correlation, simulate
from .turing import (alpha_of, classify_stability, critical_du, first_turing_curve,
                     turing_turing_point, tt_du, wavenumber_window)
from .unfolding import critical_lines_and_region, planar_equilibria, planar_unfolding
from .verify import SUITES, run_suites

EXIT_EXPECTATION = 1


def resolve_threads(arg: int | None) -> int:
    if arg is not None:
        if arg < 1:
            raise ConfigError("--threads must be >= 1")
        return arg
    env = os.environ.get("TURING2_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError(f"TURING2_THREADS must be an integer (got {env!r})") from None
        if n < 1:
            raise ConfigError("TURING2_THREADS must be >= 1")
        return n
    return 1


def _window_info(lin, p) -> dict:
    win = wavenumber_window(lin, p)
    return {"n_hat": win.n_hat, "n_star": win.n_star, "n_bar": win.n_bar,
            "du_nbar": float(critical_du(lin, p, win.n_bar))}


def cmd_steady_state(cfg: dict, out: Path, args) -> int:
    p = params_from(cfg)
    rep = validate_params(p)
    if not rep.positive:
        raise ConfigError("; ".join(rep.violations))
    if not rep.exists:
        raise ExistenceViolated("; ".join(rep.violations))
    lin = steady_state(p)
    report = {
        "params": p.as_dict(),
        "u_star": lin.u_star, "v_star": lin.v_star, "varpi": lin.varpi,
        "A1": lin.A1, "D0": lin.D0,
        "validation": {"ok": rep.ok, "violations": list(rep.violations), "ode_stable": rep.ode_stable,
                       "turing_capable": rep.turing_capable, "r0_lower": rep.r0_lower,
                       "r0_upper": rep.r0_upper},
        "verdict": str(classify_stability(lin, p, p.du, p.alpha)),
    }
    if rep.turing_capable:
        report["wavenumbers"] = _window_info(lin, p)
    write_json(out / "steady_state.json", report)
    print(f"u* = {lin.u_star:.17g}, v* = {lin.v_star:.17g}, verdict {report['verdict']}")
    return 0


def bifurcation_grid(sec: dict, du_top: float) -> np.ndarray:
    num = get(sec, "bifurcation", "num", 200, integer=True, positive=True)
    lo = get(sec, "bifurcation", "du_min", None)
    hi = get(sec, "bifurcation", "du_max", None)
    if lo is None and hi is None:
        return du_top * (np.arange(num) + 0.5) / num
    lo = du_top / (2 * num) if lo is None else lo
    hi = du_top * (1 - 1 / (2 * num)) if hi is None else hi
    if not 0 < lo <= hi < du_top:
        raise ConfigError(f"bifurcation grid must lie inside (0, {du_top!r})")
    return np.linspace(lo, hi, num)


def cmd_bifurcation(cfg: dict, out: Path, args) -> int:
    p = params_from(cfg)
    lin = steady_state(p)
    sec = section(cfg, "bifurcation")
    win = wavenumber_window(lin, p)
    du_top = float(critical_du(lin, p, win.n_bar))
    grid = bifurcation_grid(sec, du_top)
    n_lo = int(np.floor(win.n_hat)) + 1
    n_max = get(sec, "bifurcation", "n_max", max(win.n_bar + 5, n_lo + 1), integer=True)
    if n_max < n_lo:
        raise ConfigError(f"bifurcation.n_max must be >= {n_lo}")
    curves = [(n, d, max(float(alpha_of(lin, p, n, d)), 0.0)) for n in range(n_lo, n_max + 1) for d in grid]
    write_csv(out / "turing_curves.csv", ("n", "du", "alpha"), curves)
    first = []
    for d in grid:
        a, n = first_turing_curve(lin, p, float(d))
        first.append((n, d, a))
    write_csv(out / "first_curve.csv", ("n", "du", "alpha"), first)
    tt = []
    for n in range(win.n_bar, n_max):
        d = float(tt_du(lin, p, n))
        if grid[0] <= d <= grid[-1]:
            pt = turing_turing_point(lin, p, n)
            tt.append((pt.n1, pt.n2, pt.du_star, pt.alpha_star, f"T{pt.n1}_{pt.n2}"))
    write_csv(out / "tt_points.csv", ("n1", "n2", "du", "alpha", "label"), tt)
    write_json(out / "bifurcation.json", {"wavenumbers": _window_info(lin, p), "n_max": n_max,
                                          "grid_points": len(grid), "tt_points": len(tt)})
    print(f"n_bar = {win.n_bar}, du^n_bar = {du_top:.17g}, {len(tt)} Turing-Turing point(s)")
    return 0


def _flip(nf, hook):
    """Test hook: negate one cubic self-interaction coefficient."""
    key = {"kappa11": ("3000", 0), "kappa22": ("0300", 1)}.get(hook)
    if key is None:
        raise ConfigError(f"unknown flip_kappa hook {hook!r}")
    cubic = {k: v.copy() for k, v in nf.cubic.items()}
    cubic[key[0]][key[1]] *= -1
    return dataclasses.replace(nf, cubic=cubic)


def cmd_normal_form(cfg: dict, out: Path, args) -> int:
    p0 = params_from(cfg)
    lin0 = steady_state(p0)
    sec = section(cfg, "normal_form")
    win = wavenumber_window(lin0, p0)
    n1 = get(sec, "normal_form", "n1", win.n_bar, integer=True, positive=True)
    n2 = get(sec, "normal_form", "n2", n1 + 1, integer=True, positive=True)
    tt = turing_turing_point(lin0, p0, n1) if n2 == n1 + 1 else None
    du_s = get(sec, "normal_form", "du_star", tt.du_star if tt else None, positive=True)
    al_s = get(sec, "normal_form", "alpha_star", tt.alpha_star if tt else None, positive=True)
    if du_s is None or al_s is None:
        raise ConfigError("normal_form.du_star and alpha_star are required for non-adjacent modes")
    tol = get(sec, "normal_form", "singular_tol", 1e-6, positive=True)
    conv = convention_from(sec)
    p = p0.replace(du=du_s, alpha=al_s)
    lin = steady_state(p)
    nf = normal_form(lin, p, reaction_taylor(lin, p), n1, n2, conv, tol)
    hooks = section(cfg, "hooks")
    if "flip_kappa" in hooks:
        nf = _flip(nf, hooks["flip_kappa"])
    try:
        unf = planar_unfolding(nf)
    except Turing2Error as exc:
        print(f"kappa11 = {nf.B('3000', 1):.17g}, kappa22 = {nf.B('0300', 2):.17g}", file=sys.stderr)
        raise exc
    lines = unf.critical_lines()
    points = []
    for mu in sec.get("test_points", []):
        try:
            region = critical_lines_and_region(unf, mu)[1]
        except OnBoundary:
            region = "boundary"
        eq = planar_equilibria(unf, mu)
        points.append({"mu": list(map(float, mu)), "region": region,
                       "equilibria": [{"family": e.family, "signs": list(e.signs), "z": list(e.z),
                                       "r": list(e.r)} for e in eq.points]})
    mg = section(sec, "mu_grid") if "mu_grid" in sec else {}
    radius = get(mg, "normal_form.mu_grid", "radius", 0.3, positive=True)
    num = get(mg, "normal_form.mu_grid", "num", 61, integer=True, positive=True)
    axis = np.linspace(-radius, radius, num)
    regions = []
    for m2 in axis:
        for m1 in axis:
            if m1 * m1 + m2 * m2 > radius * radius:
                continue
            try:
                region = critical_lines_and_region(unf, (m1, m2))[1]
            except OnBoundary:
                region = "boundary"
            regions.append((m1, m2, region))
    write_csv(out / "region_map.csv", ("mu1", "mu2", "region"), regions)
    coeffs = nf.flat()
    write_csv(out / "normal_form_coefficients.csv", ("name", "value"), sorted(coeffs.items()))
    report = {
        "n1": n1, "n2": n2, "du_star": du_s, "alpha_star": al_s, "singular_tol": tol,
        "convention": dataclasses.asdict(conv),
        "exact_tt_point": dataclasses.asdict(tt) if tt else None,
        "eigenpairs": [{"n": e.n, "phi": e.phi, "psi": e.psi} for e in nf.pairs],
        "coefficients": coeffs,
        "unfolding": {"kappa11": unf.kappa11, "kappa12": unf.kappa12, "kappa21": unf.kappa21,
                      "kappa22": unf.kappa22, "alpha1_mu": unf.alpha1_mu, "alpha2_mu": unf.alpha2_mu,
                      "eps_tilde": unf.eps_tilde, "b_tilde": unf.b_tilde, "c_tilde": unf.c_tilde,
                      "d_tilde": unf.d_tilde, "d_minus_bc": unf.det},
        "critical_lines": [{"name": ln.name, "slope": ln.slope, "coef": list(ln.coef), "side": ln.side}
                           for ln in lines],
        "test_points": points,
    }
    write_json(out / "normal_form.json", report)
    print(f"b = {unf.b_tilde:.6g}, c = {unf.c_tilde:.6g}, d = {unf.d_tilde}, "
          + ", ".join(f"{ln.name} {ln.slope:.6g}" for ln in lines))
    return 0


def cmd_simulate(cfg: dict, out: Path, args) -> int:
    sc = sim_config_from(cfg)
    sol = simulate(sc)
    m1, m2 = sc.modes
    x = sol.grid.x
    rows = ((t, xi, ui, vi) for t, us, vs in zip(sol.t, sol.u, sol.v) for xi, ui, vi in zip(x, us, vs))
    write_csv(out / "snapshots.csv", ("t", "x", "u", "v"), rows)
    write_csv(out / "modes.csv", ("t", f"z_{m1}", f"z_{m2}"), ((t, *z) for t, z in zip(sol.z_t, sol.z)))
    sec = section(cfg, "simulate")
    transient = get(sec, "simulate", "transient_time", None)
    verdict = classify_pattern(sol, m1, m2, transient_time=transient)
    n_corr = verdict.mode or m1
    report = {
        "verdict": str(verdict), "label": verdict.label, "mode": verdict.mode, "sign": verdict.sign,
        "amplitudes": {f"z_{k}": v for k, v in verdict.amplitudes.items()},
        "correlation": {"n": n_corr, "u": profile_correlation(sol.grid, sol.final[0], n_corr),
                        "v": profile_correlation(sol.grid, sol.final[1], n_corr)},
        "transient": verdict.transient,
        "sup_distance": sol.sup_distance(), "t_final": float(sol.t[-1]), "steps": sol.steps,
        "early_exit": sol.early_exit, "min_value": sol.min_value, "nonnegative": sol.nonnegative,
    }
    status = 0
    expect = sec.get("expect")
    if expect:
        ok = (verdict.label == expect.get("label", verdict.label)
              and verdict.mode == expect.get("mode", verdict.mode)
              and verdict.sign == expect.get("sign", verdict.sign))
        report["expectation"] = {"expected": expect, "met": ok}
        if not ok and not args.report_only:
            status = EXIT_EXPECTATION
    write_json(out / "verdict.json", report)
    print(f"{verdict} sign {verdict.sign:+d} at t = {sol.t[-1]:.6g}"
          + ("" if not expect else f" (expected {expect}; {'met' if report['expectation']['met'] else 'NOT met'})"))
    return status


def cmd_verify(cfg: dict, out: Path, args) -> int:
    p = params_from(cfg)
    sec = section(cfg, "verify")
    suites = sec.get("suites", list(SUITES))
    tols = dict(sec.get("tolerances", {}))
    if args.tolerance is not None:
        tols = {s: args.tolerance for s in SUITES}
    hooks = section(cfg, "hooks")
    try:
        results = run_suites(p, suites, tols, resolve_threads(args.threads), hooks.get("taylor_scale"))
    except KeyError as exc:
        raise ConfigError(str(exc)) from None
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: max error {r.max_error:.3e} (tol {r.tolerance:g})")
    passed = all(r.passed for r in results)
    write_json(out / "verify.json", {"passed": passed, "suites": [r.as_dict() for r in results]})
    return 0 if passed or args.report_only else EXIT_EXPECTATION


COMMANDS = {
    "steady-state": cmd_steady_state,
    "bifurcation": cmd_bifurcation,
    "normal-form": cmd_normal_form,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    def common(parser, suppress):
        d = argparse.SUPPRESS if suppress else None
        parser.add_argument("--config", default=d, help="JSON run configuration")
        parser.add_argument("--out", default=d, help="output directory (default: out)")
        parser.add_argument("--threads", type=int, default=d, help="worker threads (env TURING2_THREADS)")
        parser.add_argument("--report-only", action="store_true", default=d or False,
                            help="report failed checks without a failing exit code")

    ap = argparse.ArgumentParser(prog="turing2", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    common(ap, False)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        common(sp, True)
        if name == "verify":
            sp.add_argument("--tolerance", type=float, default=None,
                            help="override every suite tolerance")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if not hasattr(args, "tolerance"):
        args.tolerance = None
    try:
        if args.config is None:
            raise ConfigError("--config is required")
        resolve_threads(args.threads)
        cfg = load_config(args.config)
        out = Path(args.out or "out")
        return COMMANDS[args.command](cfg, out, args)
    except Turing2Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
