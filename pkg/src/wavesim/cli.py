"""Command line interface.

Verbs: run, bench, compare, estimate, presets.  Exit codes: 0 on
success, 2 for configuration and validation failures, 3 when a run
diverges, 4 when the requested backend is unavailable.
"""

import argparse
import logging
import sys
import time
from pathlib import Path

import numpy as np
import yaml

from . import bench as bench_mod
from . import compare as compare_mod
from . import presets, scenario, traceio
from .errors import (BackendUnavailableError, ConfigError, DomainError,
                     ModelError, WaveSimError)
from .solver import run as run_solver

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIVERGED = 3
EXIT_BACKEND = 4


def _load_scenario(name_or_path: str) -> dict:
    """Preset name first, then a YAML file path."""
    if name_or_path in presets.preset_names():
        return presets.preset_scenario(name_or_path)
    path = Path(name_or_path)
    if path.is_file():
        return scenario.load_file(path)
    raise ConfigError(
        f"{name_or_path!r} is neither a preset "
        f"({', '.join(presets.preset_names())}) nor a scenario file")


def _resolve_from_args(args) -> scenario.ResolvedScenario:
    doc = _load_scenario(args.scenario)
    return scenario.resolve(
        doc,
        level=getattr(args, "level", None),
        backend=getattr(args, "backend", None),
        n_steps=getattr(args, "steps", None),
        output_dir=getattr(args, "out", None),
        strict_frequency=getattr(args, "strict_frequency", False),
    )


def _parse_band(text: str) -> tuple:
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError:
        raise ConfigError(
            f"band {text!r} must look like f_lo:f_hi, e.g. 0.02:0.06"
        ) from None
    return lo, hi


def _progress_printer(n_steps: int):
    stride = max(1, n_steps // 20)
    t0 = time.perf_counter()

    def cb(report):
        if (report.step + 1) % stride == 0 or report.step == n_steps - 1:
            print(f"step {report.step + 1}/{n_steps}  "
                  f"max|v| {report.max_abs_velocity:.3e}  "
                  f"elapsed {time.perf_counter() - t0:.1f}s", flush=True)

    return cb


def cmd_run(args) -> int:
    resolved = _resolve_from_args(args)
    out_dir = Path(resolved.output_dir or f"runs/{resolved.name}")
    progress = _progress_printer(resolved.domain.n_steps) \
        if args.progress else None

    t0 = time.perf_counter()
    result = run_solver(resolved, progress=progress)
    wall = time.perf_counter() - t0

    out_dir.mkdir(parents=True, exist_ok=True)
    paths = traceio.write_traces(out_dir, result.traces)
    manifest = resolved.manifest_dict({
        "wall_time_s": wall,
        "steps_completed": result.steps_completed,
        "diverged": result.diverged,
    })
    scenario.save_file(out_dir / "manifest.yaml", manifest)

    if args.dump_state:
        state_dir = Path(args.dump_state)
        state_dir.mkdir(parents=True, exist_ok=True)
        for name in ("vx", "vy", "vz", "sxx", "syy", "szz",
                     "sxy", "sxz", "syz"):
            np.save(state_dir / f"{name}.npy", result.fields.component(name))

    print(f"{resolved.name}: {result.steps_completed}/"
          f"{resolved.domain.n_steps} steps in {wall:.1f}s "
          f"({resolved.backend}, {resolved.precision})")
    print(f"wrote {len(paths)} trace files and manifest.yaml to {out_dir}")
    if result.diverged:
        print("run diverged; traces are truncated", file=sys.stderr)
        return EXIT_DIVERGED
    return EXIT_OK


def cmd_bench(args) -> int:
    doc = _load_scenario(args.scenario)
    backends = tuple(b.strip() for b in args.backends.split(",") if b.strip())
    levels = None
    if args.levels:
        levels = [int(v) for v in args.levels.split(",")]
    report = bench_mod.run_benchmark(doc, levels=levels, backends=backends,
                                     warmup=args.warmup, steps=args.steps)
    print(report.format_text())
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(yaml.safe_dump(report.to_dict(), sort_keys=False))
        print(f"wrote {out}")
    return EXIT_OK


def cmd_compare(args) -> int:
    band = _parse_band(args.band)
    sim_dir = Path(args.sim)
    sim_traces = traceio.read_traces(sim_dir)
    if not sim_traces:
        raise ConfigError(f"no trace files found in {sim_dir}")
    ref_traces = traceio.read_traces(Path(args.ref))
    if not ref_traces:
        raise ConfigError(f"no trace files found in {args.ref}")

    sim = traceio.station_traces_to_traceset(sim_traces)
    station_coords = {}
    source_latlon = None
    manifest_path = sim_dir / "manifest.yaml"
    if manifest_path.is_file():
        doc = yaml.safe_load(manifest_path.read_text())
        for row in doc.get("receivers", []):
            if "latitude" in row and "longitude" in row:
                station_coords[row["name"]] = (row["latitude"],
                                               row["longitude"])
        loc = doc.get("source", {}).get("location", {})
        if "latitude" in loc and "longitude" in loc:
            source_latlon = (loc["latitude"], loc["longitude"])

    report = compare_mod.compare_traces(sim, ref_traces, band,
                                        station_coords=station_coords,
                                        source_latlon=source_latlon)
    print(report.format_text())
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "comparison.yaml").write_text(
            yaml.safe_dump(report.to_dict(), sort_keys=False))
        overlays = compare_mod.write_overlays(sim, ref_traces, band, out_dir)
        print(f"wrote comparison.yaml and {len(overlays)} overlay files "
              f"to {out_dir}")
    return EXIT_OK


def cmd_estimate(args) -> int:
    resolved = _resolve_from_args(args)
    per_step, run_seconds = bench_mod.estimate_run_seconds(resolved)
    total = run_seconds * args.simulations * args.iterations
    print(f"{resolved.name}: measured {per_step:.4f} s/step on "
          f"{resolved.backend}; one run of {resolved.domain.n_steps} steps "
          f"takes {bench_mod.format_duration(run_seconds)}")
    print(f"projected total for {args.simulations} simulation(s) x "
          f"{args.iterations} iteration(s): "
          f"{bench_mod.format_duration(total)} (DD:HH:MM:SS)")
    return EXIT_OK


def cmd_presets(args) -> int:
    # listing only; suppress per-receiver resolution warnings
    scenario_log = logging.getLogger("wavesim.scenario")
    old_level = scenario_log.level
    scenario_log.setLevel(logging.ERROR)
    try:
        for name in presets.preset_names():
            doc = presets.preset_scenario(name)
            resolved = scenario.resolve(doc)
            d = resolved.domain
            print(f"{name}: grid {d.nx}x{d.ny}x{d.nz}, {d.n_steps} steps of "
                  f"{d.dt}s, {len(resolved.receivers)} receivers")
    finally:
        scenario_log.setLevel(old_level)
    return EXIT_OK


def _add_scenario_args(p: argparse.ArgumentParser):
    p.add_argument("--scenario", required=True,
                   help="preset name or scenario YAML path")
    p.add_argument("--level", type=int, default=None,
                   help="resolution level override (0-10)")
    p.add_argument("--backend", default=None,
                   help="backend override (cpu-serial, cpu-parallel, gpu)")
    p.add_argument("--steps", type=int, default=None,
                   help="step count override")
    p.add_argument("--strict-frequency", action="store_true",
                   help="fail instead of warning when the source peak "
                        "frequency exceeds the resolvable maximum")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavesim",
        description="3D elastic wavefield simulation on a staggered grid")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a scenario and write traces")
    _add_scenario_args(p)
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--progress", action="store_true",
                   help="print progress lines during the run")
    p.add_argument("--dump-state", default=None, metavar="DIR",
                   help="write the final field arrays as .npy files")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bench", help="time the step loop per backend")
    p.add_argument("--scenario", required=True,
                   help="preset name or scenario YAML path")
    p.add_argument("--levels", default=None,
                   help="comma-separated resolution levels to benchmark")
    p.add_argument("--backends", default="cpu-serial,cpu-parallel",
                   help="comma-separated backends to time")
    p.add_argument("--warmup", type=int, default=bench_mod.WARMUP_STEPS)
    p.add_argument("--steps", type=int, default=bench_mod.TIMED_STEPS,
                   help="steps in the timed window")
    p.add_argument("--out", default=None, help="also write a YAML report")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("compare",
                       help="compare simulated traces against references")
    p.add_argument("--sim", required=True,
                   help="directory with simulated trace files")
    p.add_argument("--ref", required=True,
                   help="directory with reference trace files")
    p.add_argument("--band", default="0.02:0.06",
                   help="pass band in Hz as f_lo:f_hi")
    p.add_argument("--out", default=None,
                   help="directory for the YAML report and overlay files")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("estimate",
                       help="extrapolate full-run wall time from a sample")
    _add_scenario_args(p)
    p.add_argument("--simulations", type=int, default=1,
                   help="number of runs to project")
    p.add_argument("--iterations", type=int, default=1,
                   help="number of batches of runs to project")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("presets", help="list built-in scenarios")
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BackendUnavailableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except (ConfigError, DomainError, ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except WaveSimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
