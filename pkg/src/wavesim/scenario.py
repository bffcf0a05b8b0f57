"""Scenario files: parsing, validation and resolution.

A scenario is one YAML document describing the domain, the medium, one
moment-tensor source, the receivers, the sponge and run options.  The
same schema serves as run manifest: resolving a scenario and re-reading
the manifest it writes produces an identical resolved configuration
(manifest-only sections such as ``run_info`` are ignored on load).
"""

import logging
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import yaml

from .errors import ConfigError
from .geometry import (GeographicBounds, SimulationDomain, level_preset,
                       max_source_frequency, max_time_step)
from .medium import (LayeredModel, ParameterVolume, build_parameter_volume,
                     default_parameter_shape)
from .receivers import Receiver
from .solver import BACKEND_NAMES, DIVERGENCE_CHECK_INTERVAL
from .sources import MomentTensorSource, SourceTimeFunction
from .sponge import FACE_NAMES, SpongeProfile

log = logging.getLogger(__name__)

PRECISIONS = ("float32", "float64")

#: Default source peak frequency as a fraction of the resolvable maximum.
DEFAULT_PEAK_FRACTION = 0.5


def parse_time(value) -> datetime:
    """Accept ISO-8601 strings (Z suffix included) or datetime objects;
    naive values are taken as UTC."""
    if isinstance(value, datetime):
        dt = value
    else:
        s = str(value).strip().replace("Z", "+00:00")
        # datetime.fromisoformat before 3.11 needs 3 or 6 fraction digits
        m = re.match(r"^(.*T\d{2}:\d{2}:\d{2})\.(\d+)(.*)$", s)
        if m:
            s = f"{m.group(1)}.{(m.group(2) + '000000')[:6]}{m.group(3)}"
        try:
            dt = datetime.fromisoformat(s)
        except ValueError as exc:
            raise ConfigError(f"unparseable time {value!r}: {exc}") from None
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt


def _require(mapping, key, where):
    if not isinstance(mapping, dict) or key not in mapping:
        raise ConfigError(f"scenario is missing {where}.{key}")
    return mapping[key]


@dataclass
class ResolvedScenario:
    """Fully validated configuration, ready to run."""

    name: str
    domain: SimulationDomain
    model: LayeredModel
    parameter_shape: tuple
    volume: ParameterVolume
    source: MomentTensorSource
    source_location: tuple  # (lat, lon, depth_km)
    centroid_time: datetime | None
    receivers: tuple
    sponge: SpongeProfile
    backend: str
    precision: str
    medium_cache: bool
    divergence_check_interval: int
    threads: int | None
    output_dir: str | None
    level: int | None
    max_stable_dt: float
    max_frequency: float

    def to_dict(self) -> dict:
        """Scenario document with every default made explicit."""
        d = self.domain
        b = d.bounds
        src = self.source
        doc = {
            "name": self.name,
            "domain": {
                "bounds": {
                    "lat_min": b.lat_min, "lat_max": b.lat_max,
                    "lon_min": b.lon_min, "lon_max": b.lon_max,
                    "depth_min_km": b.depth_min, "depth_max_km": b.depth_max,
                },
                "grid": {"nx": d.nx, "ny": d.ny, "nz": d.nz},
                "dt": d.dt,
                "n_steps": d.n_steps,
                "start_time": d.start_time.isoformat(),
            },
            "medium": {
                "layers": [list(map(float, (la.top_depth, la.vp, la.vs,
                                            la.rho)))
                           for la in self.model.layers],
                "parameter_grid": {"nx": self.parameter_shape[0],
                                   "ny": self.parameter_shape[1],
                                   "nz": self.parameter_shape[2]},
            },
            "source": {
                "location": {"latitude": self.source_location[0],
                             "longitude": self.source_location[1],
                             "depth_km": self.source_location[2]},
                "moment_tensor_nm": [list(row) for row in src.moment],
                "stf": {"kind": src.stf.kind,
                        "peak_frequency_hz": src.stf.peak_frequency,
                        "delay_s": src.stf.delay},
                "peak_time_s": src.peak_time,
                "injection_sign": int(src.sign),
                # derived, ignored on load
                "grid_position": list(map(float, src.grid_position)),
            },
            "receivers": [
                {
                    "name": r.name,
                    "latitude": r.latitude,
                    "longitude": r.longitude,
                    "depth_km": r.depth,
                    # derived, ignored on load
                    "grid_position": list(map(float, r.grid_position)),
                }
                for r in self.receivers
            ],
            "sponge": {
                "width": self.sponge.width,
                "strength": self.sponge.strength,
                "faces": dict(self.sponge.faces),
            },
            "run": {
                "backend": self.backend,
                "precision": self.precision,
                "medium_cache": self.medium_cache,
                "divergence_check_interval": self.divergence_check_interval,
                "threads": self.threads,
                "output_dir": self.output_dir,
            },
        }
        if self.level is not None:
            doc["domain"]["level"] = self.level
        if self.centroid_time is not None:
            doc["source"]["centroid_time"] = self.centroid_time.isoformat()
        return doc

    def manifest_dict(self, run_info: dict | None = None) -> dict:
        doc = self.to_dict()
        info = {
            "max_stable_dt_s": self.max_stable_dt,
            "max_frequency_hz": self.max_frequency,
            "duration_s": self.domain.duration,
        }
        if run_info:
            info.update(run_info)
        doc["run_info"] = info
        return doc


def _resolve_domain(raw: dict, level_override, n_steps_override):
    dom = _require(raw, "domain", "scenario")
    braw = _require(dom, "bounds", "domain")
    bounds = GeographicBounds(
        lat_min=float(_require(braw, "lat_min", "bounds")),
        lat_max=float(_require(braw, "lat_max", "bounds")),
        lon_min=float(_require(braw, "lon_min", "bounds")),
        lon_max=float(_require(braw, "lon_max", "bounds")),
        depth_min=float(_require(braw, "depth_min_km", "bounds")),
        depth_max=float(_require(braw, "depth_max_km", "bounds")),
    )
    level = dom.get("level")
    if level_override is not None:
        level = level_override
    preset = level_preset(int(level)) if level is not None else None

    if level_override is not None:
        # a level override replaces grid, dt and step count wholesale
        nx, ny, nz = preset.nx, preset.ny, preset.nz
        dt = preset.dt
        n_steps = preset.n_steps
    else:
        grid = dom.get("grid")
        if grid is not None:
            nx, ny, nz = (int(_require(grid, k, "domain.grid"))
                          for k in ("nx", "ny", "nz"))
        elif preset is not None:
            nx, ny, nz = preset.nx, preset.ny, preset.nz
        else:
            raise ConfigError("domain needs either a level or an explicit grid")
        dt = dom.get("dt", preset.dt if preset else None)
        if dt is None:
            raise ConfigError("domain needs either a level or an explicit dt")
        n_steps = dom.get("n_steps", preset.n_steps if preset else None)
        if n_steps is None:
            raise ConfigError(
                "domain needs either a level or an explicit n_steps")
    if n_steps_override is not None:
        n_steps = n_steps_override
    start_time = parse_time(dom.get("start_time", "1970-01-01T00:00:00+00:00"))
    domain = SimulationDomain.from_bounds(bounds, nx, ny, nz, float(dt),
                                          int(n_steps), start_time)
    return domain, (int(level) if level is not None else None)


def _resolve_medium(raw: dict, domain: SimulationDomain):
    med = _require(raw, "medium", "scenario")
    rows = _require(med, "layers", "medium")
    parsed = []
    for row in rows:
        if isinstance(row, dict):
            parsed.append((float(_require(row, "top_km", "layer")),
                           float(_require(row, "vp_km_s", "layer")),
                           float(_require(row, "vs_km_s", "layer")),
                           float(_require(row, "rho_g_cm3", "layer"))))
        else:
            if len(row) != 4:
                raise ConfigError(f"layer row {row!r} must have 4 entries")
            parsed.append(tuple(float(v) for v in row))
    model = LayeredModel.from_rows(parsed)
    pg = med.get("parameter_grid")
    if pg is None:
        shape = default_parameter_shape(domain.shape)
    else:
        shape = tuple(int(_require(pg, k, "parameter_grid"))
                      for k in ("nx", "ny", "nz"))
    volume = build_parameter_volume(model, domain, shape)
    return model, shape, volume


def _resolve_source(raw: dict, domain: SimulationDomain, f_max: float,
                    strict_frequency: bool):
    src = _require(raw, "source", "scenario")
    loc = _require(src, "location", "source")
    lat = float(_require(loc, "latitude", "source.location"))
    lon = float(_require(loc, "longitude", "source.location"))
    depth = float(_require(loc, "depth_km", "source.location"))
    moment = _require(src, "moment_tensor_nm", "source")

    sraw = src.get("stf") or {}
    fp = sraw.get("peak_frequency_hz")
    if fp is None:
        fp = DEFAULT_PEAK_FRACTION * f_max
    fp = float(fp)
    if fp > f_max:
        msg = (f"source peak frequency {fp:.6g} Hz exceeds the resolvable "
               f"maximum {f_max:.6g} Hz for this grid and medium")
        if strict_frequency:
            raise ConfigError(msg)
        log.warning(msg)
    delay = sraw.get("delay_s")
    stf = SourceTimeFunction(kind=sraw.get("kind", "ricker"),
                             peak_frequency=fp,
                             delay=float(delay) if delay is not None else None)

    peak_time = src.get("peak_time_s")
    centroid_time = src.get("centroid_time")
    if centroid_time is not None:
        centroid_time = parse_time(centroid_time)
        if peak_time is None:
            peak_time = (centroid_time - domain.start_time).total_seconds()
    if peak_time is not None and float(peak_time) < 0.0:
        log.warning("source peak fires %.3f s before the run starts",
                    -float(peak_time))

    source = MomentTensorSource(
        moment=tuple(tuple(float(v) for v in row) for row in moment),
        grid_position=domain.grid_position(lat, lon, depth),
        stf=stf,
        peak_time=float(peak_time) if peak_time is not None else None,
        sign=float(src.get("injection_sign", -1)),
    )
    return source, (lat, lon, depth), centroid_time


def _resolve_receivers(raw: dict, domain: SimulationDomain,
                       sponge: SpongeProfile):
    rows = raw.get("receivers") or []
    receivers = []
    seen = set()
    for row in rows:
        name = str(_require(row, "name", "receiver"))
        if name in seen:
            raise ConfigError(f"duplicate receiver name {name!r}")
        seen.add(name)
        lat = float(_require(row, "latitude", "receiver"))
        lon = float(_require(row, "longitude", "receiver"))
        if "depth_km" in row and row["depth_km"] is not None:
            depth = float(row["depth_km"])
        elif "altitude_m" in row and row["altitude_m"] is not None:
            depth = -float(row["altitude_m"]) / 1000.0
        else:
            raise ConfigError(f"receiver {name} needs depth_km or altitude_m")
        gp = domain.grid_position(lat, lon, depth)
        _warn_if_in_sponge(name, gp, domain, sponge)
        receivers.append(Receiver(name=name, grid_position=gp, latitude=lat,
                                  longitude=lon, depth=depth))
    return tuple(receivers)


def _warn_if_in_sponge(name, gp, domain, sponge):
    if sponge.width <= 0:
        return
    gx, gy, gz = gp
    nx, ny, nz = domain.shape
    dists = {
        "x_min": gx, "x_max": nx - 1 - gx,
        "y_min": gy, "y_max": ny - 1 - gy,
        "z_min": gz, "z_max": nz - 1 - gz,
    }
    for face, dist in dists.items():
        if getattr(sponge, face) and dist < sponge.width:
            log.warning(
                "receiver %s sits %.1f cells from the damped %s face "
                "(sponge width %d); its amplitudes will be attenuated",
                name, dist, face, sponge.width)


def _resolve_sponge(raw: dict) -> SpongeProfile:
    sp = raw.get("sponge") or {}
    faces = sp.get("faces") or {}
    unknown = set(faces) - set(FACE_NAMES)
    if unknown:
        raise ConfigError(f"unknown sponge faces {sorted(unknown)}")
    defaults = SpongeProfile()
    kwargs = {name: bool(faces.get(name, getattr(defaults, name)))
              for name in FACE_NAMES}
    return SpongeProfile(width=int(sp.get("width", defaults.width)),
                         strength=float(sp.get("strength", defaults.strength)),
                         **kwargs)


def resolve(raw: dict, *, level: int | None = None,
            backend: str | None = None, n_steps: int | None = None,
            output_dir: str | None = None,
            strict_frequency: bool = False) -> ResolvedScenario:
    """Validate a scenario document and resolve every default.

    Keyword arguments override the corresponding document entries (the
    command line uses them).  Raises ConfigError on validation failure.
    """
    if not isinstance(raw, dict):
        raise ConfigError("scenario document must be a mapping")
    domain, lvl = _resolve_domain(raw, level, n_steps)
    model, pshape, volume = _resolve_medium(raw, domain)

    max_dt = max_time_step(domain.min_step, model.vel_max)
    if domain.dt > max_dt:
        raise ConfigError(
            f"dt {domain.dt} s exceeds the stability limit {max_dt:.6g} s "
            f"(min step {domain.min_step:.6g} m, max velocity "
            f"{model.vel_max:.6g} m/s)")
    f_max = max_source_frequency(domain.max_step, model.vel_min)

    source, source_loc, centroid_time = _resolve_source(
        raw, domain, f_max, strict_frequency)
    sponge = _resolve_sponge(raw)
    receivers = _resolve_receivers(raw, domain, sponge)

    run = raw.get("run") or {}
    backend_name = backend or run.get("backend", "cpu-serial")
    if backend_name not in BACKEND_NAMES:
        raise ConfigError(f"unknown backend {backend_name!r}; "
                          f"expected one of {BACKEND_NAMES}")
    precision = run.get("precision", "float32")
    if precision not in PRECISIONS:
        raise ConfigError(f"unknown precision {precision!r}")
    interval = int(run.get("divergence_check_interval",
                           DIVERGENCE_CHECK_INTERVAL))
    if interval < 1:
        raise ConfigError("divergence_check_interval must be >= 1")
    threads = run.get("threads")

    return ResolvedScenario(
        name=str(raw.get("name", "scenario")),
        domain=domain,
        model=model,
        parameter_shape=tuple(pshape),
        volume=volume,
        source=source,
        source_location=source_loc,
        centroid_time=centroid_time,
        receivers=receivers,
        sponge=sponge,
        backend=backend_name,
        precision=precision,
        medium_cache=bool(run.get("medium_cache", False)),
        divergence_check_interval=interval,
        threads=int(threads) if threads is not None else None,
        output_dir=output_dir or run.get("output_dir"),
        level=lvl,
        max_stable_dt=max_dt,
        max_frequency=f_max,
    )


def load_file(path) -> dict:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"scenario file {path} does not exist")
    try:
        doc = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path} does not contain a scenario mapping")
    return doc


def save_file(path, doc: dict):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(yaml.safe_dump(doc, sort_keys=False))
