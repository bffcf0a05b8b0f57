"""Trace comparison against reference seismograms.

Both sides are band-pass filtered with the same zero-phase filter, the
reference is linearly resampled onto the simulated time axis over the
overlapping window, and misfit is reported as RMS error relative to the
reference RMS, per station and component.
"""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .filters import bandpass, rms, rms_error, relative_error
from .geometry import approximate_distance_km
from .receivers import TraceSet
from .traceio import StationTraces, resample_onto

#: Fewest overlapping samples the zero-phase filter can handle sensibly.
MIN_OVERLAP_SAMPLES = 32


@dataclass
class ComponentComparison:
    station: str
    component: str
    rms_sim: float
    rms_ref: float
    rms_err: float
    relative: float


@dataclass
class StationComparison:
    station: str
    distance_km: float | None
    components: list = field(default_factory=list)

    @property
    def mean_relative(self) -> float:
        return float(np.mean([c.relative for c in self.components]))


@dataclass
class ComparisonReport:
    band: tuple
    stations: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def overall_mean_relative(self) -> float:
        rels = [c.relative for s in self.stations for c in s.components]
        return float(np.mean(rels)) if rels else float("nan")

    def to_dict(self) -> dict:
        return {
            "band_hz": list(self.band),
            "overall_mean_relative_rms": self.overall_mean_relative,
            "stations": [
                {
                    "station": s.station,
                    "distance_km": s.distance_km,
                    "mean_relative_rms": s.mean_relative,
                    "components": {
                        c.component: {
                            "rms_sim": c.rms_sim,
                            "rms_ref": c.rms_ref,
                            "rms_error": c.rms_err,
                            "relative_rms_error": c.relative,
                        }
                        for c in s.components
                    },
                }
                for s in self.stations
            ],
            "skipped": list(self.skipped),
        }

    def format_text(self) -> str:
        lines = [
            f"band {self.band[0]:g}-{self.band[1]:g} Hz, "
            "relative RMS error per component",
            f"{'station':<10} {'dist km':>8} {'vx':>8} {'vy':>8} "
            f"{'vz':>8} {'mean':>8}",
        ]
        for s in self.stations:
            byc = {c.component: c.relative for c in s.components}
            cells = [f"{byc[n]:8.3f}" if n in byc else "     n/a"
                     for n in ("vx", "vy", "vz")]
            dist = f"{s.distance_km:8.1f}" if s.distance_km is not None \
                else "     n/a"
            lines.append(f"{s.station:<10} {dist} " + " ".join(cells)
                         + f" {s.mean_relative:8.3f}")
        lines.append(f"overall mean relative RMS error: "
                     f"{self.overall_mean_relative:.4f}")
        for note in self.skipped:
            lines.append(f"skipped: {note}")
        return "\n".join(lines)


def _overlap(sim_times, ref_times):
    t_lo = max(sim_times[0], ref_times[0])
    t_hi = min(sim_times[-1], ref_times[-1])
    mask = (sim_times >= t_lo) & (sim_times <= t_hi)
    if int(mask.sum()) < MIN_OVERLAP_SAMPLES:
        raise ConfigError(
            f"only {int(mask.sum())} overlapping samples between simulated "
            f"and reference traces; need at least {MIN_OVERLAP_SAMPLES}")
    return mask


def compare_traces(sim: TraceSet, reference: dict, band: tuple,
                   station_coords: dict | None = None,
                   source_latlon: tuple | None = None) -> ComparisonReport:
    """Compare a simulated trace set against reference station traces.

    Parameters
    ----------
    sim : TraceSet
    reference : dict
        Station name to :class:`StationTraces`.
    band : (f_lo, f_hi)
        Pass band in Hz for both sides.
    station_coords : dict, optional
        Station name to (latitude, longitude), used with source_latlon to
        sort stations by distance from the source.  Alphabetical otherwise.
    source_latlon : (lat, lon), optional
    """
    f_lo, f_hi = band
    report = ComparisonReport(band=(float(f_lo), float(f_hi)))
    sim_times = sim.time_axis()

    for station in sim.station_names:
        if station not in reference:
            report.skipped.append(f"{station}: no reference traces")
            continue
        ref = reference[station]
        dist = None
        if station_coords and source_latlon and station in station_coords:
            slat, slon = station_coords[station]
            dist = approximate_distance_km(source_latlon[0], source_latlon[1],
                                           slat, slon)
        entry = StationComparison(station=station, distance_km=dist)
        for comp in sim.components:
            if comp not in ref.components:
                report.skipped.append(f"{station}/{comp}: not in reference")
                continue
            ref_t, ref_v = ref.components[comp]
            mask = _overlap(sim_times, ref_t)
            times = sim_times[mask]
            sim_v = sim.trace(station, comp)[mask]
            ref_on_sim = resample_onto(times, ref_t, ref_v)
            sim_f = bandpass(sim_v, sim.dt, f_lo, f_hi)
            ref_f = bandpass(ref_on_sim, sim.dt, f_lo, f_hi)
            err = rms_error(sim_f, ref_f)
            entry.components.append(ComponentComparison(
                station=station, component=comp,
                rms_sim=rms(sim_f), rms_ref=rms(ref_f), rms_err=err,
                relative=relative_error(sim_f, ref_f)))
        if entry.components:
            report.stations.append(entry)
        else:
            report.skipped.append(f"{station}: no comparable components")

    if any(s.distance_km is not None for s in report.stations):
        report.stations.sort(key=lambda s: (s.distance_km is None,
                                            s.distance_km, s.station))
    else:
        report.stations.sort(key=lambda s: s.station)
    return report


def write_overlays(sim: TraceSet, reference: dict, band: tuple,
                   out_dir) -> list:
    """Write per-station overlay files: filtered simulated and reference
    traces on the shared time axis, one column pair per component."""
    f_lo, f_hi = band
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sim_times = sim.time_axis()
    paths = []
    for station in sim.station_names:
        if station not in reference:
            continue
        ref = reference[station]
        comps = [c for c in sim.components if c in ref.components]
        if not comps:
            continue
        ref_t0, ref_v0 = ref.components[comps[0]]
        mask = _overlap(sim_times, ref_t0)
        times = sim_times[mask]
        columns = [times]
        header = ["time_s"]
        for comp in comps:
            ref_t, ref_v = ref.components[comp]
            sim_f = bandpass(sim.trace(station, comp)[mask], sim.dt,
                             f_lo, f_hi)
            ref_f = bandpass(resample_onto(times, ref_t, ref_v), sim.dt,
                             f_lo, f_hi)
            columns.extend([sim_f, ref_f])
            header.extend([f"sim_{comp}", f"ref_{comp}"])
        path = out_dir / f"{station}_overlay.txt"
        with path.open("w") as fh:
            fh.write(f"# station {station}\n")
            fh.write(f"# band_hz {f_lo:g} {f_hi:g}\n")
            fh.write("# columns " + " ".join(header) + "\n")
            for row in np.column_stack(columns):
                fh.write(" ".join(f"{v:.9e}" for v in row) + "\n")
        paths.append(path)
    return paths
