"""Command-line interface.

Verbs:
    validate   check a config file, print findings
    run        execute a full simulation run
    scenarios  list the built-in beamforming scenarios
    render     re-render an existing heat-map CSV to SVG/ASCII

Exit codes: 0 success, 1 validation failure, 2 runtime error.
"""

import argparse
import dataclasses
import json
import os
import sys

import numpy as np
import yaml

from .config import RunConfig, load_config, validate
from .errors import BeamfieldError, ConfigError
from .field import HeatMap
from .geometry import ProbeGrid, standard_scenarios
from .render import heatmap_ascii, heatmap_svg
from .runner import run


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="beamfield",
        description="Massive-MIMO downlink beamforming and RF-EMF exposure simulator",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p_val = sub.add_parser("validate", help="validate a run configuration")
    p_val.add_argument("--config", help="YAML config file (defaults built in)")

    p_run = sub.add_parser("run", help="execute a full run and write artifacts")
    p_run.add_argument("--config", help="YAML config file (defaults built in)")
    p_run.add_argument("--out", help="output directory (overrides config)")
    p_run.add_argument("--seed", type=int, help="seed override")
    p_run.add_argument("--scenario", action="append", default=None,
                       help="scenario id to run (repeatable; default: all in config)")
    p_run.add_argument("--format", action="append", default=None,
                       choices=["csv", "json", "svg", "ascii"],
                       help="export format (repeatable; overrides config)")

    sub.add_parser("scenarios", help="list the built-in scenarios")

    p_ren = sub.add_parser("render", help="re-render a heat-map CSV")
    p_ren.add_argument("csv", help="heat-map CSV written by a previous run")
    p_ren.add_argument("--format", action="append", default=None,
                       choices=["svg", "ascii"], help="rendering to produce")
    p_ren.add_argument("--out", help="output directory (default: alongside the CSV)")
    p_ren.add_argument("--vmax", type=float, help="top of the colour scale in V/m")
    return parser


def _load(args):
    if getattr(args, "config", None):
        return load_config(args.config)
    return RunConfig()


def _apply_overrides(config, args):
    updates = {}
    if getattr(args, "seed", None) is not None:
        updates["seed"] = args.seed
    if getattr(args, "scenario", None):
        updates["scenario_ids"] = tuple(str(s) for s in args.scenario)
    if getattr(args, "format", None):
        updates["formats"] = tuple(sorted(set(args.format)))
    if getattr(args, "out", None):
        updates["output_dir"] = args.out
    return dataclasses.replace(config, **updates) if updates else config


def _cmd_validate(args):
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
        report = validate(raw if raw is not None else {})
    else:
        report = validate(RunConfig())
    if report.ok:
        print("configuration OK (no findings)")
        return 0
    for finding in report.findings:
        print(f"finding: {finding}")
    return 1


def _cmd_run(args):
    config = _apply_overrides(_load(args), args)
    manifest = run(config)
    print(f"run complete: {len(manifest.artifacts)} artifacts in {manifest.out_dir}")
    for art in manifest.artifacts:
        scen = f" [scenario {art['scenario']}]" if art["scenario"] else ""
        print(f"  {art['path']}{scen}")
    _print_compliance_table(manifest)
    return 0


def _print_compliance_table(manifest):
    reports = []
    for art in manifest.artifacts:
        if art["type"] != "compliance":
            continue
        with open(os.path.join(manifest.out_dir, art["path"]), encoding="utf-8") as fh:
            reports.append(json.load(fh))
    if not reports:
        return
    print()
    print("region   limit_vpm  exceeded  worst_margin_db  status")
    for rep in reports:
        margin = rep["worst_margin_db"]
        margin_s = f"{margin:+15.2f}" if margin is not None else f"{'-inf':>15}"
        status = "compliant" if rep["compliant"] else "EXCEEDS"
        print(f"{rep['region']:<8} {rep['limit_vpm']:>9.1f}  "
              f"{rep['exceed_count']:>8}  {margin_s}  {status}")


def _cmd_scenarios(_args):
    print("id  users  positions (x m, y m)")
    for s in standard_scenarios():
        pos = "; ".join(f"({x:g}, {y:g})" for x, y in s.ue_positions)
        print(f"{s.id:>2}  {s.n_users:>5}  {pos}")
    return 0


def _read_heatmap_csv(path):
    """Rebuild a HeatMap from the runner's x_m,y_m,e_vpm CSV."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "x_m,y_m,e_vpm":
            raise ConfigError(f"{path}: not a heat-map CSV (header {header!r})")
        for line in fh:
            x, y, v = line.strip().split(",")
            rows.append((float(x), float(y), float(v)))
    xs = np.array(sorted({r[0] for r in rows}))
    ys = np.array(sorted({r[1] for r in rows}))
    if len(xs) * len(ys) != len(rows):
        raise ConfigError(f"{path}: points do not form a complete lattice")
    values = np.empty(len(rows))
    points = np.empty((len(rows), 3))
    lookup = {(r[0], r[1]): r[2] for r in rows}
    k = 0
    for y in ys:
        for x in xs:
            points[k] = (x, y, 0.0)
            values[k] = lookup[(x, y)]
            k += 1
    spacing = float(xs[1] - xs[0]) if len(xs) > 1 else 1.0
    grid = ProbeGrid(points=points, spacing=spacing, probe_height=0.0,
                     x_values=xs, y_values=ys)
    scenario_id = os.path.basename(path).removesuffix(".csv")
    if scenario_id.startswith("heatmap_scenario_"):
        scenario_id = scenario_id.removeprefix("heatmap_scenario_")
    return HeatMap(grid=grid, values=values, scenario_id=scenario_id)


def _cmd_render(args):
    heatmap = _read_heatmap_csv(args.csv)
    formats = args.format or ["svg", "ascii"]
    out_dir = args.out or os.path.dirname(os.path.abspath(args.csv))
    os.makedirs(out_dir, exist_ok=True)
    stem = os.path.splitext(os.path.basename(args.csv))[0]
    written = []
    if "svg" in formats:
        path = os.path.join(out_dir, f"{stem}.svg")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(heatmap_svg(heatmap, vmax=args.vmax))
        written.append(path)
    if "ascii" in formats:
        path = os.path.join(out_dir, f"{stem}.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(heatmap_ascii(heatmap, vmax=args.vmax))
        written.append(path)
    for path in written:
        print(f"wrote {path}")
    return 0


def main(argv=None):
    args = _build_parser().parse_args(argv)
    handlers = {
        "validate": _cmd_validate,
        "run": _cmd_run,
        "scenarios": _cmd_scenarios,
        "render": _cmd_render,
    }
    try:
        return handlers[args.verb](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BeamfieldError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
