"""Time stepping: compute backends, phase updates and the run driver.

One step advances the state in two in-place phases, stresses first,
then velocities, with source injection between them and receiver
recording after; a phase reads only the opposite field family (plus the
cell it rewrites), so each phase is a pure function of the state left by
the previous one.  The sponge multiplies the freshly written fields as
part of the same pass, which is cell-wise equivalent to a separate
multiplicative sweep.

Medium parameters at the staggered field positions are interpolated
from the parameter volume at the start of every phase; since the medium
is static over a run this can be cached (``cache_medium``) without
changing results.
"""

import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BackendUnavailableError, ConfigError
from .fields import ALL_COMPONENTS, FieldSet
from .geometry import STAGGER_OFFSETS, SimulationDomain
from .medium import (VACUUM_DENSITY_THRESHOLD, ParameterVolume,
                     mirrored_indices, sample_trilinear_lattice)
from .receivers import Recorder, TraceSet
from .sources import SourcePlan
from .sponge import SpongeProfile, build_sponge_weights

log = logging.getLogger(__name__)

DIVERGENCE_CHECK_INTERVAL = 10

BACKEND_NAMES = ("cpu-serial", "cpu-parallel", "gpu")


@dataclass
class StepReport:
    """Per-step record: wall time in seconds and the velocity maximum."""

    step: int
    wall_time: float
    max_abs_velocity: float
    diverged: bool = False


# ---------------------------------------------------------------------------
# backends
# ---------------------------------------------------------------------------

class CpuSerialBackend:
    """Single-threaded reference backend."""

    name = "cpu-serial"

    def dispatch(self, kernel, nx, args):
        kernel(0, nx, *args)

    def close(self):
        pass


class CpuParallelBackend:
    """Slab-parallel backend: the x axis is split into contiguous slabs
    executed on a thread pool (the kernels release the GIL).  Slabs write
    disjoint cells, so results are identical to the serial backend."""

    name = "cpu-parallel"

    def __init__(self, threads: int | None = None):
        if threads is not None and threads < 1:
            raise ConfigError("threads must be positive")
        self.threads = threads or max(2, os.cpu_count() or 1)
        self._pool = None

    def _slabs(self, nx):
        n = min(self.threads, nx)
        step = -(-nx // n)
        return [(a, min(a + step, nx)) for a in range(0, nx, step)]

    def dispatch(self, kernel, nx, args):
        if self._pool is None:
            self._pool = ThreadPoolExecutor(max_workers=self.threads)
        futures = [self._pool.submit(kernel, a, b, *args)
                   for a, b in self._slabs(nx)]
        for f in futures:
            f.result()

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None


def make_backend(name: str, threads: int | None = None):
    if name == "cpu-serial":
        return CpuSerialBackend()
    if name == "cpu-parallel":
        return CpuParallelBackend(threads)
    if name == "gpu":
        raise BackendUnavailableError(
            "the gpu backend is not available in this installation; "
            "its kernels live in the companion frontend package")
    raise ConfigError(f"unknown backend {name!r}; expected one of {BACKEND_NAMES}")


# ---------------------------------------------------------------------------
# per-run precomputation
# ---------------------------------------------------------------------------

def _shift_tables(n: int):
    idx = np.arange(n, dtype=np.int64)
    return (mirrored_indices(idx - 2, n), mirrored_indices(idx - 1, n),
            mirrored_indices(idx + 1, n), mirrored_indices(idx + 2, n))


def _surface_bands(domain: SimulationDomain, volume: ParameterVolume):
    """z rows (integer and half-offset) within 2 cells of the free surface,
    where the stencil drops to 2nd order; empty when no vacuum exists."""
    nz = domain.nz
    kk = np.arange(nz, dtype=np.float64)
    if volume.surface_z > 0.0:
        ks = volume.surface_z / domain.dz
        band_i = np.abs(kk - ks) < 2.0
        band_h = np.abs(kk + 0.5 - ks) < 2.0
    else:
        band_i = np.zeros(nz, dtype=bool)
        band_h = np.zeros(nz, dtype=bool)
    return band_i.astype(np.uint8), band_h.astype(np.uint8)


def _staggered_parameters(vol_field: np.ndarray, sim_shape, offset, dtype):
    nx, ny, nz = sim_shape
    npx, npy, npz = vol_field.shape
    ox, oy, oz = offset
    xs = (np.arange(nx, dtype=np.float64) + ox) * (npx / nx)
    ys = (np.arange(ny, dtype=np.float64) + oy) * (npy / ny)
    zs = (np.arange(nz, dtype=np.float64) + oz) * (npz / nz)
    return sample_trilinear_lattice(vol_field, xs, ys, zs).astype(dtype)


class SolverState:
    """Precomputed per-run data: mirror tables, sponge weights, surface
    bands and (optionally cached) staggered medium parameters."""

    def __init__(self, domain: SimulationDomain, volume: ParameterVolume,
                 sponge: SpongeProfile, dtype=np.float32, backend=None,
                 cache_medium: bool = False, dt: float | None = None):
        self.domain = domain
        self.volume = volume
        self.dtype = np.dtype(dtype)
        self.backend = backend or CpuSerialBackend()
        self.cache_medium = cache_medium
        self.dt = float(domain.dt if dt is None else dt)
        nx, ny, nz = domain.shape
        self.tables = (*_shift_tables(nx), *_shift_tables(ny), *_shift_tables(nz))
        self.weights = build_sponge_weights(sponge, domain.shape, self.dtype)
        self.band_i, self.band_h = _surface_bands(domain, volume)
        self._velocity_params = None
        self._stress_params = None

    # medium sampling, one bundle per phase -------------------------------

    def _sample_velocity_params(self):
        shape = self.domain.shape
        rho = self.volume.rho
        out = []
        for comp in ("vx", "vy", "vz"):
            r = _staggered_parameters(rho, shape, STAGGER_OFFSETS[comp],
                                      self.dtype)
            out.append(r)
            out.append((r < VACUUM_DENSITY_THRESHOLD).astype(np.uint8))
        return tuple(out)

    def _sample_stress_params(self):
        shape = self.domain.shape
        lam_n = _staggered_parameters(self.volume.lam, shape,
                                      STAGGER_OFFSETS["sxx"], self.dtype)
        mu_n = _staggered_parameters(self.volume.mu, shape,
                                     STAGGER_OFFSETS["sxx"], self.dtype)
        mu_xy = _staggered_parameters(self.volume.mu, shape,
                                      STAGGER_OFFSETS["sxy"], self.dtype)
        mu_xz = _staggered_parameters(self.volume.mu, shape,
                                      STAGGER_OFFSETS["sxz"], self.dtype)
        mu_yz = _staggered_parameters(self.volume.mu, shape,
                                      STAGGER_OFFSETS["syz"], self.dtype)
        return lam_n, mu_n, mu_xy, mu_xz, mu_yz

    def velocity_params(self):
        if self.cache_medium:
            if self._velocity_params is None:
                self._velocity_params = self._sample_velocity_params()
            return self._velocity_params
        return self._sample_velocity_params()

    def stress_params(self):
        if self.cache_medium:
            if self._stress_params is None:
                self._stress_params = self._sample_stress_params()
            return self._stress_params
        return self._sample_stress_params()

    # phases ----------------------------------------------------------------

    def velocity_phase(self, fields: FieldSet):
        rho_vx, vac_vx, rho_vy, vac_vy, rho_vz, vac_vz = self.velocity_params()
        d = self.domain
        args = (fields.vx, fields.vy, fields.vz, fields.sxx, fields.syy,
                fields.szz, fields.sxy, fields.sxz, fields.syz,
                rho_vx, rho_vy, rho_vz, vac_vx, vac_vy, vac_vz,
                self.weights, self.band_i, self.band_h, *self.tables,
                self.dt, d.dx, d.dy, d.dz)
        self.backend.dispatch(kernels.velocity_kernel, d.nx, args)

    def stress_phase(self, fields: FieldSet):
        lam_n, mu_n, mu_xy, mu_xz, mu_yz = self.stress_params()
        d = self.domain
        args = (fields.vx, fields.vy, fields.vz, fields.sxx, fields.syy,
                fields.szz, fields.sxy, fields.sxz, fields.syz,
                lam_n, mu_n, mu_xy, mu_xz, mu_yz,
                self.weights, self.band_i, self.band_h, *self.tables,
                self.dt, d.dx, d.dy, d.dz)
        self.backend.dispatch(kernels.stress_kernel, d.nx, args)


def update_velocities(fields: FieldSet, volume: ParameterVolume,
                      domain: SimulationDomain, sponge: SpongeProfile,
                      dt: float | None = None, backend=None,
                      state: SolverState | None = None):
    """Advance the three velocity components one step in place."""
    if state is None:
        state = SolverState(domain, volume, sponge, fields.dtype, backend,
                            dt=dt)
    state.velocity_phase(fields)


def update_stresses(fields: FieldSet, volume: ParameterVolume,
                    domain: SimulationDomain, sponge: SpongeProfile,
                    dt: float | None = None, backend=None,
                    state: SolverState | None = None):
    """Advance the six stress components one step in place."""
    if state is None:
        state = SolverState(domain, volume, sponge, fields.dtype, backend,
                            dt=dt)
    state.stress_phase(fields)


# ---------------------------------------------------------------------------
# run driver
# ---------------------------------------------------------------------------

@dataclass
class RunResult:
    """Everything a finished (or aborted) run produced."""

    traces: TraceSet
    reports: list
    fields: FieldSet

    @property
    def diverged(self) -> bool:
        return self.traces.diverged

    @property
    def steps_completed(self) -> int:
        return len(self.reports)

    @property
    def wall_time(self) -> float:
        return float(sum(r.wall_time for r in self.reports))


def run(scenario, progress=None) -> RunResult:
    """Execute a resolved scenario.

    The loop aborts as soon as the divergence scan (every
    ``scenario.divergence_check_interval`` steps) finds a non-finite
    value; partial traces are returned with their ``diverged`` flag set.
    ``progress``, if given, is called with each StepReport.
    """
    domain = scenario.domain
    dtype = np.float32 if scenario.precision == "float32" else np.float64
    backend = make_backend(scenario.backend, scenario.threads)
    state = SolverState(domain, scenario.volume, scenario.sponge, dtype,
                        backend, cache_medium=scenario.medium_cache)
    fields = FieldSet.zeros(domain.shape, dtype)
    plan = SourcePlan(scenario.source, domain)
    recorder = Recorder(scenario.receivers, domain)
    interval = scenario.divergence_check_interval
    reports: list[StepReport] = []
    diverged = False
    try:
        for n in range(domain.n_steps):
            t0 = time.perf_counter()
            state.stress_phase(fields)
            plan.inject(fields, n * domain.dt, domain.dt)
            state.velocity_phase(fields)
            recorder.record(fields, n)
            maxv = kernels.max_abs3(fields.vx, fields.vy, fields.vz)
            if ((n + 1) % interval == 0 or n == domain.n_steps - 1):
                if not (math.isfinite(maxv) and fields.all_finite()):
                    diverged = True
            report = StepReport(n, time.perf_counter() - t0, float(maxv),
                                diverged)
            reports.append(report)
            if progress is not None:
                progress(report)
            if diverged:
                log.error("state diverged at step %d; aborting", n)
                break
    finally:
        backend.close()
    traces = recorder.to_traceset(completed=len(reports), diverged=diverged)
    return RunResult(traces=traces, reports=reports, fields=fields)
