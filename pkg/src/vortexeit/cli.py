"""Command-line interface.

    vortexeit <check|scan|map|validate|sweep> --config CONFIG [--out DIR]

Exit codes: 0 success / all checks pass, 1 configuration or I/O error,
2 warnings (``check`` only), 3 failed check.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import analysis, oracle, transfer
from .config import ConfigError, RunConfig, load_config
from .errors import VortexEITError
from .medium import RHO_STAR

EXIT_OK, EXIT_CONFIG, EXIT_WARN, EXIT_FAIL = 0, 1, 2, 3

SCAN_PLOT_SCRIPT = """\
# gnuplot script for scan.csv
# columns: 1 rho/sigma, 2 |T1|^2, 3 |T2|^2, 4 arg T2 at phi=0, 5 flags
set datafile separator ','
set xlabel 'rho / sigma'
set ylabel 'transmission probability'
plot 'scan.csv' using 1:2 skip 1 with lines dashtype 2 linecolor rgb 'forest-green' title '|T1|^2', \\
     ''         using 1:3 skip 1 with lines linecolor rgb 'red' title '|T2|^2'
"""


def fmt(x) -> str:
    return format(float(x), ".17g")


def write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(v if isinstance(v, str) else fmt(v) if isinstance(v, float)
                              else str(v) for v in row) + "\n")


def write_json(path: Path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


def _out_dir(cfg: RunConfig, args) -> Path:
    out = Path(args.out if args.out is not None else cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_check(cfg: RunConfig, out: Path) -> int:
    params = cfg.medium_params()
    phys = None
    if cfg.physical is not None:
        p = cfg.physical
        phys = (p.L_um, p.lambda_um, p.sigma_um)
    report = analysis.lifetime_report(params, phys)

    rows = [
        ("adiabaticity 2xi^2/alpha", f"{report.adiabaticity:.6g}", report.statuses["adiabaticity"]),
        ("optical density alpha", f"{report.alpha:.6g}", report.statuses["optical_density"]),
        ("degeneracy margin v-/v0", f"{report.degeneracy_margin:.6g}", report.statuses["degeneracy"]),
        ("diffraction L*lambda/sigma^2",
         "-" if report.diffraction_number is None else f"{report.diffraction_number:.6g}",
         report.statuses["diffraction"]),
        ("tau_pol/tau (v_min ~ v0)", f"{report.lifetime_ratio:.6g}", ""),
        ("tau_pol/tau (true v_min)", f"{report.lifetime_ratio_true:.6g}", ""),
    ]
    width = max(len(r[0]) for r in rows)
    for name, value, status in rows:
        print(f"{name:<{width}}  {value:>14}  {status}")
    for note in report.caveats:
        print(f"note: {note}")
    print(f"overall: {report.overall}")

    write_json(out / "check.json", {"config": cfg.resolved().to_json_dict(),
                                    "report": report.to_dict()})
    return {"pass": EXIT_OK, "warn": EXIT_WARN}.get(report.overall, EXIT_FAIL)


def cmd_scan(cfg: RunConfig, out: Path) -> int:
    records = analysis.radial_scan(cfg.medium_params(), cfg.scan.grid())
    write_csv(out / "scan.csv", ["rho", "i1", "i2", "phase2", "flags"],
              ((r.rho, r.i1, r.i2, r.phase2, r.flags) for r in records))
    (out / "plot_scan.gp").write_text(SCAN_PLOT_SCRIPT)
    return EXIT_OK


def cmd_map(cfg: RunConfig, out: Path) -> int:
    m = cfg.map
    rho, phi, i2, phase2 = analysis.azimuthal_map(cfg.medium_params(), m.grid(), m.n_phi)
    rows = ((rho[i], phi[j], i2[i, j], phase2[i, j])
            for i in range(rho.size) for j in range(phi.size))
    write_csv(out / "map.csv", ["rho", "phi", "i2", "phase2"], rows)
    return EXIT_OK


def _loglog_slope(x, y) -> float:
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def run_validation(cfg: RunConfig) -> dict:
    """Oracle-agreement, convergence and unitarity checks for one configuration."""
    v = cfg.validate_
    params = cfg.medium_params()
    rho = cfg.scan.grid()
    result = {}

    result["xi_star"] = analysis.solve_xi_condition(params.a, params.S)

    strict = replace(params, gamma_tilde=v.gamma_tilde)
    exact = oracle.exact_transmissions(rho, 0.0, strict)
    approx = transfer.transmissions(rho, 0.0, params)
    result["max_oracle_deviation"] = float(max(np.max(np.abs(exact.i1 - approx.i1)),
                                               np.max(np.abs(exact.i2 - approx.i2))))

    g_an = oracle.analytic_generator(RHO_STAR, 0.0, params)
    gaps = [np.max(np.abs(oracle.exact_generator(RHO_STAR, 0.0, replace(params, gamma_tilde=g)) - g_an))
            for g in v.gamma_scan]
    result["oracle_gamma_slope"] = _loglog_slope(v.gamma_scan, gaps)

    e0 = np.array([1.0, 0.0], dtype=complex)
    gens = oracle.analytic_generator(rho, 0.0, params)
    ref = oracle.expm2(1j * gens)[..., :, 0]
    result["ode_max_error"] = float(np.max(np.abs(oracle.ode_propagate(gens, e0, v.ode_steps) - ref)))

    g = g_an
    ref = oracle.expm2(1j * g)[:, 0]
    errs = [np.max(np.abs(oracle.ode_propagate(g, e0, n) - ref)) for n in v.order_steps]
    result["ode_convergence_order"] = -_loglog_slope(v.order_steps, errs)

    lossless = replace(params, alpha=math.inf)
    phi = 2.0 * np.pi * np.arange(v.unitarity_n_phi) / v.unitarity_n_phi
    res = transfer.transmissions(rho[:, None], phi[None, :], lossless)
    result["unitarity_defect_lossless"] = float(np.max(np.abs(res.i1 + res.i2 - 1.0)))
    return result


def validation_failures(cfg: RunConfig, result: dict) -> list[str]:
    v = cfg.validate_
    lo, hi = v.xi_star_range
    checks = {
        "xi_star": lo <= result["xi_star"] <= hi,
        "max_oracle_deviation": result["max_oracle_deviation"] < v.oracle_tolerance,
        "oracle_gamma_slope": abs(result["oracle_gamma_slope"] - v.gamma_slope) <= v.gamma_slope_tolerance,
        "ode_max_error": result["ode_max_error"] < v.ode_tolerance,
        "ode_convergence_order": abs(result["ode_convergence_order"] - v.order) <= v.order_tolerance,
        "unitarity_defect_lossless": result["unitarity_defect_lossless"] < v.unitarity_tolerance,
    }
    return [name for name, ok in checks.items() if not ok]


def cmd_validate(cfg: RunConfig, out: Path) -> int:
    try:
        result = run_validation(cfg)
    except VortexEITError as exc:
        print(f"FAIL: validation could not run: {exc}", file=sys.stderr)
        return EXIT_FAIL
    failed = validation_failures(cfg, result)
    for name, value in result.items():
        print(f"{name:<28} {value:.6g}  {'FAIL' if name in failed else 'ok'}")
    payload = dict(result, failed=failed, config=cfg.resolved().to_json_dict())
    write_json(out / "validate.json", payload)
    for name in failed:
        print(f"FAIL: {name}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_sweep(cfg: RunConfig, out: Path) -> int:
    if cfg.sweep is None:
        raise ConfigError("sweep: block is required for the sweep command")
    names = list(cfg.sweep.axes)
    axes = [cfg.sweep.axes[n].values() for n in names]
    base = cfg.medium_params()
    rho = cfg.scan.grid()
    rows = []
    for combo in itertools.product(*axes):
        values = dict(zip(names, (float(c) for c in combo)))
        rho_peak = i2_peak = i1_peak = math.nan
        try:
            params = replace(base, **values)
            scan = analysis.radial_scan(params, rho)
            rho_peak, i2_peak = analysis.find_peak(scan)
            i1_peak = float(transfer.transmissions(rho_peak, 0.0, params, strict=False).i1)
        except VortexEITError:
            pass
        rows.append([*values.values(), rho_peak, i2_peak, i1_peak])
    write_csv(out / "sweep.csv", names + ["rho_peak", "i2_peak", "i1_at_peak"], rows)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "scan": cmd_scan,
    "map": cmd_map,
    "validate": cmd_validate,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vortexeit",
        description="Vortex transfer in double-tripod spinor slow light.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="JSON configuration file")
    parser.add_argument("--out", default=None, help="output directory (overrides output_dir)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        cfg.resolved()
    except ConfigError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    except VortexEITError as exc:
        print(f"{args.config}: medium.xi: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        out = _out_dir(cfg, args)
        return COMMANDS[args.command](cfg, out)
    except ConfigError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except VortexEITError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
