"""End-to-end run orchestration and artifact export.

One run executes, per selected scenario: channel generation, pilot-based
CSI estimation, receive combining, zero-forcing precoding, OFDM frame
transmission (per-user BER) and the probe-grid heat map.  Scenario
results are then aggregated: average map, boresight cut, decay fit,
summary statistics and compliance checks against the built-in regional
limits.  Every artifact is written in a fixed order with deterministic
formatting, and a manifest of content hashes is emitted last, so two
runs with the same configuration and seed are byte-identical.
"""

import concurrent.futures
import dataclasses
import hashlib
import json
import math
import os

from . import compliance as compliance_mod
from . import stats as stats_mod
from .channel import estimate_csi, generate_channel
from .config import derive_seed, validate
from .errors import ConfigError
from .field import compute_heatmap
from .geometry import far_field_distance, wavelength
from .ofdm import transmit_frame
from .precoding import combining_vectors, zf_precoder
from .render import heatmap_ascii, heatmap_svg

_SEED_STREAM_CSI = 0
_SEED_STREAM_FRAME = 1


@dataclasses.dataclass(frozen=True)
class ScenarioResult:
    scenario: object
    ber: object
    heatmap: object


@dataclasses.dataclass(frozen=True)
class Manifest:
    """Artifact inventory: path, type and content hash per file."""

    artifacts: tuple
    out_dir: str

    def paths(self):
        return [a["path"] for a in self.artifacts]


def run_scenario(config, scenario, index, array, room, grid):
    """The measurement procedure for one scenario: pilots, precoding, frames, map."""
    ch_cfg = dataclasses.replace(
        config.channel, rng_seed=derive_seed(config.seed, index, _SEED_STREAM_CSI)
    )
    ofdm_cfg = dataclasses.replace(
        config.ofdm, rng_seed=derive_seed(config.seed, index, _SEED_STREAM_FRAME)
    )
    h_true = generate_channel(array, scenario, room, ch_cfg)
    h_est = estimate_csi(h_true, ch_cfg)
    combiners = combining_vectors(h_est, scenario)
    precoder = zf_precoder(h_est, scenario, combiners=combiners)
    ber = transmit_frame(precoder, h_true, combiners, ofdm_cfg,
                         scenario_id=scenario.id)
    heatmap = compute_heatmap(scenario, array, room, precoder, grid, ch_cfg,
                              calibration=config.calibration)
    return ScenarioResult(scenario=scenario, ber=ber, heatmap=heatmap)


def run(config, out_dir=None):
    """Execute a full run and write all artifacts; returns the manifest.

    Aborts (without emitting a manifest) if validation finds problems or
    any scenario fails; partial results are never described as complete.
    """
    report = validate(config)
    if not report.ok:
        raise ConfigError("configuration invalid:\n" + "\n".join(report.findings))

    out_dir = out_dir if out_dir is not None else config.output_dir
    os.makedirs(out_dir, exist_ok=True)

    room = config.build_room()
    array = config.build_array()
    grid = config.build_grid()
    scenarios = config.selected_scenarios()

    if config.workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(
                lambda pair: run_scenario(config, pair[1], pair[0], array, room, grid),
                enumerate(scenarios),
            ))
    else:
        results = [run_scenario(config, s, i, array, room, grid)
                   for i, s in enumerate(scenarios)]

    maps = [r.heatmap for r in results]
    average = stats_mod.average_heatmaps(maps)
    cut = stats_mod.extract_cut(average, config.cut_x)
    min_distance = None
    if config.fit_exclude_near_field:
        lam = wavelength(config.channel.carrier_frequency)
        min_distance = far_field_distance(array.aperture(), lam)
    exponent, r_squared = stats_mod.fit_decay(cut, min_distance=min_distance)
    avg_summary = stats_mod.summary(average)
    regions = sorted(compliance_mod.DEFAULT_LIMITS_VPM)
    compliance_reports = [compliance_mod.check(average, region) for region in regions]
    exclusion_distances = {
        region: compliance_mod.min_compliant_distance([cut], region)
        for region in regions
    }

    writer = _ArtifactWriter(out_dir, config.formats)
    for r in results:
        writer.heatmap(r.heatmap, scenario=r.scenario.id,
                       vmax=config.svg_vmax, markers=r.scenario.ue_positions)
    writer.heatmap(average, scenario=None, vmax=config.svg_vmax)
    writer.ber_table([r.ber for r in results])
    writer.cut(cut, config.cut_x)
    writer.json_report("decay_fit.json", {
        "cut_x_m": config.cut_x,
        "exponent": exponent,
        "r_squared": r_squared,
        "min_distance_m": min_distance,
    }, kind="decay-fit")
    writer.json_report("summary.json", {
        "average": _summary_dict(avg_summary),
        "per_scenario": {r.scenario.id: _summary_dict(stats_mod.summary(r.heatmap))
                         for r in results},
    }, kind="summary")
    for rep in compliance_reports:
        distance = exclusion_distances[rep.region]
        writer.json_report(f"compliance_{rep.region}.json", {
            "region": rep.region,
            "limit_vpm": rep.limit,
            "exceed_count": rep.exceed_count,
            "exceed_fraction": rep.exceed_fraction,
            "worst_margin_db": None if math.isinf(rep.worst_margin_db)
            else rep.worst_margin_db,
            "compliant": rep.compliant,
            "min_compliant_distance_m": None if math.isinf(distance) else distance,
        }, kind="compliance")

    return writer.manifest()


def _summary_dict(s):
    return {
        "max_vpm": s.max,
        "max_position_m": list(s.max_position),
        "min_vpm": s.min,
        "mean_vpm": s.mean,
        "p95_vpm": s.p95,
    }


def _sig9(v):
    """Nine significant digits, compact form."""
    return f"{v:.9g}"


class _ArtifactWriter:
    """Writes artifacts in deterministic order and records their hashes."""

    def __init__(self, out_dir, formats):
        self.out_dir = out_dir
        self.formats = set(formats)
        self._records = []

    def _write(self, name, text, kind, scenario=None):
        path = os.path.join(self.out_dir, name)
        data = text.encode("utf-8")
        with open(path, "wb") as fh:
            fh.write(data)
        self._records.append({
            "path": name,
            "type": kind,
            "sha256": hashlib.sha256(data).hexdigest(),
            "scenario": scenario,
        })

    def heatmap(self, heatmap, scenario, vmax=None, markers=()):
        stem = f"heatmap_scenario_{scenario}" if scenario is not None else "heatmap_average"
        if "csv" in self.formats:
            self._write(f"{stem}.csv", _heatmap_csv(heatmap), "heatmap-csv", scenario)
        if "json" in self.formats:
            self._write(f"{stem}.json", _json_text(_heatmap_dict(heatmap)),
                        "heatmap-json", scenario)
        if "svg" in self.formats:
            self._write(f"{stem}.svg", heatmap_svg(heatmap, vmax=vmax, markers=markers),
                        "heatmap-svg", scenario)
        if "ascii" in self.formats:
            self._write(f"{stem}.txt", heatmap_ascii(heatmap, vmax=vmax),
                        "heatmap-ascii", scenario)

    def ber_table(self, reports):
        # BER and the cut are core results: CSV is always written, JSON on request.
        lines = ["scenario,ue,ber,bits"]
        for rep in reports:
            for u, ber in enumerate(rep.per_ue_ber, start=1):
                lines.append(f"{rep.scenario_id},{u},{_sig9(ber)},{rep.bits_tested}")
        self._write("ber.csv", "\n".join(lines) + "\n", "ber-csv")
        if "json" in self.formats:
            payload = [{
                "scenario": rep.scenario_id,
                "per_ue_ber": list(rep.per_ue_ber),
                "bits_tested": rep.bits_tested,
            } for rep in reports]
            self._write("ber.json", _json_text(payload), "ber-json")

    def cut(self, profile, x):
        lines = ["y_m,field_vpm"]
        for d, f in profile.samples:
            lines.append(f"{_sig9(d)},{_sig9(f)}")
        self._write(f"cut_x{x:g}.csv", "\n".join(lines) + "\n", "cut-csv")

    def json_report(self, name, payload, kind):
        self._write(name, _json_text(payload), kind)

    def manifest(self):
        manifest = Manifest(artifacts=tuple(self._records), out_dir=self.out_dir)
        payload = {"artifacts": list(self._records)}
        path = os.path.join(self.out_dir, "manifest.json")
        with open(path, "wb") as fh:
            fh.write(_json_text(payload).encode("utf-8"))
        return manifest


def _json_text(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _heatmap_csv(heatmap):
    lines = ["x_m,y_m,e_vpm"]
    for point, value in zip(heatmap.grid.points, heatmap.values):
        lines.append(f"{_sig9(point[0])},{_sig9(point[1])},{_sig9(value)}")
    return "\n".join(lines) + "\n"


def _heatmap_dict(heatmap):
    return {
        "scenario": heatmap.scenario_id,
        "x_m": [float(v) for v in heatmap.grid.x_values],
        "y_m": [float(v) for v in heatmap.grid.y_values],
        "e_vpm": [[float(v) for v in row] for row in heatmap.as_grid_rows()],
    }


def verify_manifest(out_dir):
    """Re-hash every artifact listed in a manifest; returns mismatched paths."""
    with open(os.path.join(out_dir, "manifest.json"), "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    bad = []
    for art in manifest["artifacts"]:
        path = os.path.join(out_dir, art["path"])
        with open(path, "rb") as fh:
            digest = hashlib.sha256(fh.read()).hexdigest()
        if digest != art["sha256"]:
            bad.append(art["path"])
    return bad
