"""Plain-text trace files.

One file per station, named ``<station>.txt``: header lines starting
with ``#`` carry the station code, location, absolute start time, the
sample step and the component order; data rows are columnar
(time, vx, vy, vz) with time in seconds past the start.  Reference
(observed) data may use the same layout or one two-column
``<station>_<component>.txt`` file (time, value) per component.
"""

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .fields import VELOCITY_COMPONENTS
from .receivers import TraceSet

_COMPONENT_FILE = re.compile(
    r"^(?P<station>.+)_(?P<comp>v[xyz])\.txt$")


@dataclass
class StationTraces:
    """Traces of one station as read back from disk."""

    station: str
    components: dict = field(default_factory=dict)  # name -> (times, values)
    meta: dict = field(default_factory=dict)

    def common_components(self, other: "StationTraces"):
        return [c for c in VELOCITY_COMPONENTS
                if c in self.components and c in other.components]


def station_filename(station: str) -> str:
    return f"{station}.txt"


def write_traces(directory, traces: TraceSet) -> list:
    """Write one file per station; returns the paths written."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    times = traces.time_axis()
    paths = []
    for rec in traces.receivers:
        path = directory / station_filename(rec.name)
        block = traces.station_block(rec.name)
        lines = [f"# station: {rec.name}"]
        if rec.latitude is not None:
            lines.append(f"# latitude: {rec.latitude!r}")
        if rec.longitude is not None:
            lines.append(f"# longitude: {rec.longitude!r}")
        if rec.depth is not None:
            lines.append(f"# depth_km: {rec.depth!r}")
        if traces.start_time is not None:
            lines.append(f"# start_time: {traces.start_time.isoformat()}")
        lines.append(f"# dt: {traces.dt!r}")
        lines.append(f"# components: {' '.join(traces.components)}")
        lines.append(f"# columns: time {' '.join(traces.components)}")
        for n in range(traces.n_samples):
            row = " ".join(f"{v:.9e}" for v in block[:, n])
            lines.append(f"{times[n]:.6f} {row}")
        path.write_text("\n".join(lines) + "\n")
        paths.append(path)
    return paths


def _parse_header(path: Path) -> dict:
    meta = {}
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if ":" in body:
                key, value = body.split(":", 1)
                meta[key.strip()] = value.strip()
    return meta


def read_station_file(path) -> StationTraces:
    """Read one multi-column station file."""
    path = Path(path)
    meta = _parse_header(path)
    data = np.loadtxt(path, comments="#", ndmin=2)
    columns = meta.get("columns", "time " + " ".join(VELOCITY_COMPONENTS)).split()
    if columns[0] != "time" or data.shape[1] != len(columns):
        raise ConfigError(f"{path}: malformed trace columns")
    times = data[:, 0]
    station = meta.get("station", path.stem)
    st = StationTraces(station=station, meta=meta)
    for c, name in enumerate(columns[1:], start=1):
        st.components[name] = (times, data[:, c])
    return st


def read_traces(directory) -> dict:
    """Read every trace file in a directory into {station: StationTraces}.

    Accepts both the station layout written by :func:`write_traces` and
    two-column per-component files for ingested reference data.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise ConfigError(f"trace directory {directory} does not exist")
    stations: dict = {}
    for path in sorted(directory.glob("*.txt")):
        if path.name.endswith("_overlay.txt"):
            continue
        m = _COMPONENT_FILE.match(path.name)
        if m:
            data = np.loadtxt(path, comments="#", ndmin=2)
            if data.shape[1] != 2:
                raise ConfigError(f"{path}: expected two columns")
            st = stations.setdefault(
                m.group("station"),
                StationTraces(station=m.group("station"),
                              meta=_parse_header(path)))
            st.components[m.group("comp")] = (data[:, 0], data[:, 1])
        else:
            st = read_station_file(path)
            stations[st.station] = st
    return stations


def resample_onto(times_dst: np.ndarray, times_src: np.ndarray,
                  values: np.ndarray) -> np.ndarray:
    """Linear interpolation of a series onto a target time axis.

    Axes that agree to well below one sample spacing (text round-trip
    noise) are treated as identical, so comparing a trace set against
    its own files yields exact zeros.
    """
    times_dst = np.asarray(times_dst, dtype=np.float64)
    times_src = np.asarray(times_src, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if times_dst.shape == times_src.shape and times_src.size > 1:
        step = times_src[1] - times_src[0]
        if step > 0 and np.max(np.abs(times_dst - times_src)) < 1e-9 * step:
            return values.copy()
    return np.interp(times_dst, times_src, values)


def station_traces_to_traceset(stations: dict) -> TraceSet:
    """Rebuild a TraceSet from station traces previously written by
    :func:`write_traces`.

    Every station must carry all three velocity components on the same
    uniform time axis.
    """
    from datetime import datetime

    from .receivers import Receiver

    if not stations:
        raise ConfigError("no station traces to assemble")
    names = list(stations)
    first = stations[names[0]]
    ref_times = None
    for name in names:
        st = stations[name]
        for comp in VELOCITY_COMPONENTS:
            if comp not in st.components:
                raise ConfigError(f"station {name} lacks component {comp}")
            times = st.components[comp][0]
            if ref_times is None:
                ref_times = times
            elif times.shape != ref_times.shape or \
                    not np.allclose(times, ref_times):
                raise ConfigError(
                    f"station {name}/{comp} is on a different time axis")
    steps = np.diff(ref_times)
    if ref_times.size > 1 and not np.allclose(steps, steps[0]):
        raise ConfigError("station traces are not uniformly sampled")

    if "dt" in first.meta:
        dt = float(first.meta["dt"])
    elif ref_times.size > 1:
        dt = float(steps[0])
    else:
        raise ConfigError("cannot infer dt from a single sample")
    start_time = None
    if "start_time" in first.meta:
        start_time = datetime.fromisoformat(first.meta["start_time"])

    receivers = []
    rows = []
    for name in names:
        st = stations[name]

        def opt(key):
            return float(st.meta[key]) if key in st.meta else None

        receivers.append(Receiver(
            name=name, grid_position=(0.0, 0.0, 0.0),
            latitude=opt("latitude"), longitude=opt("longitude"),
            depth=opt("depth_km")))
        for comp in VELOCITY_COMPONENTS:
            rows.append(np.asarray(st.components[comp][1], dtype=np.float64))
    return TraceSet(receivers=tuple(receivers), data=np.vstack(rows),
                    dt=dt, start_time=start_time)
