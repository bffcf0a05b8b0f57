"""Step-loop benchmarking and run-time estimation.

Timed step rates exclude initialization (state setup, JIT warm-up);
the report carries both the per-step rate and the total wall time
including initialization.
"""

import time
from dataclasses import dataclass, field

from .errors import BackendUnavailableError
from .fields import FieldSet
from .solver import SolverState, make_backend
from .sources import SourcePlan

WARMUP_STEPS = 10
TIMED_STEPS = 50

#: Fraction of available memory a benchmark case may claim.
MEMORY_FRACTION = 0.8

# bytes per cell: 9 field arrays + 8 staggered parameter arrays at the
# run dtype, 3 vacuum masks at one byte
_ARRAYS_PER_CELL = 9 + 8
_MASKS_PER_CELL = 3


def _rss_mb():
    try:
        import psutil
    except ImportError:
        return None
    return psutil.Process().memory_info().rss / (1024 * 1024)


def _available_mb():
    try:
        import psutil
    except ImportError:
        return None
    return psutil.virtual_memory().available / (1024 * 1024)


def required_mb(cell_count: int, itemsize: int) -> float:
    per_cell = _ARRAYS_PER_CELL * itemsize + _MASKS_PER_CELL
    return cell_count * per_cell / (1024 * 1024)


def format_duration(seconds: float) -> str:
    """Render seconds as DD:HH:MM:SS."""
    total = int(round(seconds))
    days, rem = divmod(total, 86400)
    hours, rem = divmod(rem, 3600)
    minutes, secs = divmod(rem, 60)
    return f"{days:02d}:{hours:02d}:{minutes:02d}:{secs:02d}"


@dataclass
class BenchCase:
    level: int | None
    backend: str
    threads: int
    shape: tuple
    cell_count: int
    warmup_steps: int
    timed_steps: int
    seconds_per_step: float
    init_seconds: float
    total_seconds: float
    cells_per_second: float
    rss_mb: float | None
    speedup: float = 1.0


@dataclass
class BenchmarkReport:
    scenario: str
    precision: str
    cases: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "precision": self.precision,
            "cases": [
                {
                    "level": c.level,
                    "backend": c.backend,
                    "threads": c.threads,
                    "grid": {"nx": c.shape[0], "ny": c.shape[1],
                             "nz": c.shape[2]},
                    "cell_count": c.cell_count,
                    "warmup_steps": c.warmup_steps,
                    "timed_steps": c.timed_steps,
                    "seconds_per_step": c.seconds_per_step,
                    "init_seconds": c.init_seconds,
                    "total_seconds": c.total_seconds,
                    "cells_per_second": c.cells_per_second,
                    "rss_mb": c.rss_mb,
                    "speedup_vs_first_backend": c.speedup,
                }
                for c in self.cases
            ],
            "skipped": list(self.skipped),
        }

    def format_text(self) -> str:
        lines = [
            f"scenario {self.scenario} ({self.precision}); step time "
            "excludes initialization, total includes it",
            f"{'level':>5} {'backend':<13} {'grid':<12} {'cells':>11} "
            f"{'s/step':>9} {'init s':>7} {'total s':>8} {'Mcells/s':>9} "
            f"{'speedup':>8}",
        ]
        for c in self.cases:
            nx, ny, nz = c.shape
            lvl = f"{c.level:>5d}" if c.level is not None else "    -"
            lines.append(
                f"{lvl} {c.backend:<13} {f'{nx}x{ny}x{nz}':<12} "
                f"{c.cell_count:>11,} {c.seconds_per_step:>9.4f} "
                f"{c.init_seconds:>7.2f} {c.total_seconds:>8.2f} "
                f"{c.cells_per_second / 1e6:>9.2f} {c.speedup:>8.2f}")
        for note in self.skipped:
            lines.append(f"skipped: {note}")
        return "\n".join(lines)


def _timed_loop(resolved, backend_name, warmup, steps):
    """(seconds_per_step, init_seconds, total_seconds, threads).

    Initialization covers backend and state setup plus the warm-up
    window (which absorbs kernel compilation).
    """
    domain = resolved.domain
    t_start = time.perf_counter()
    backend = make_backend(backend_name, resolved.threads)
    try:
        state = SolverState(domain, resolved.volume, resolved.sponge,
                            dtype=("float64" if resolved.precision == "float64"
                                   else "float32"),
                            backend=backend,
                            cache_medium=resolved.medium_cache)
        fields = FieldSet.zeros(domain.shape, state.dtype)
        plan = SourcePlan(resolved.source, domain)
        dt = domain.dt

        def one_step(n):
            state.stress_phase(fields)
            plan.inject(fields, n * dt, dt)
            state.velocity_phase(fields)

        for n in range(warmup):
            one_step(n)
        t0 = time.perf_counter()
        for n in range(warmup, warmup + steps):
            one_step(n)
        t1 = time.perf_counter()
        threads = getattr(backend, "threads", 1)
    finally:
        backend.close()
    return (t1 - t0) / steps, t0 - t_start, t1 - t_start, threads


def run_benchmark(doc: dict, levels=None,
                  backends=("cpu-serial", "cpu-parallel"),
                  warmup: int = WARMUP_STEPS,
                  steps: int = TIMED_STEPS) -> BenchmarkReport:
    """Time the step loop for each requested level and backend.

    ``doc`` is a scenario document; ``levels`` is a list of resolution
    levels (None benchmarks the document's own resolution).  Cases that
    do not fit in available memory, and backends that are unavailable,
    are skipped with a notice.  Raises BackendUnavailableError only if
    every backend was unavailable.
    """
    from .scenario import resolve

    report = None
    unavailable = []
    for level in (levels if levels is not None else [None]):
        resolved = resolve(doc, level=level)
        if report is None:
            report = BenchmarkReport(scenario=resolved.name,
                                     precision=resolved.precision)
        itemsize = 8 if resolved.precision == "float64" else 4
        need = required_mb(resolved.domain.cell_count, itemsize)
        avail = _available_mb()
        if avail is not None and need > MEMORY_FRACTION * avail:
            report.skipped.append(
                f"level {level}: needs ~{need:.0f} MB, "
                f"{avail:.0f} MB available")
            continue
        first_rate = None
        for backend_name in backends:
            try:
                per_step, init_s, total_s, threads = _timed_loop(
                    resolved, backend_name, warmup, steps)
            except BackendUnavailableError as exc:
                note = f"backend {backend_name}: {exc}"
                if note not in report.skipped:
                    report.skipped.append(note)
                unavailable.append(backend_name)
                continue
            case = BenchCase(
                level=level, backend=backend_name, threads=threads,
                shape=resolved.domain.shape,
                cell_count=resolved.domain.cell_count,
                warmup_steps=warmup, timed_steps=steps,
                seconds_per_step=per_step, init_seconds=init_s,
                total_seconds=total_s,
                cells_per_second=resolved.domain.cell_count / per_step,
                rss_mb=_rss_mb())
            if first_rate is None:
                first_rate = per_step
            else:
                case.speedup = first_rate / per_step
            report.cases.append(case)
    if report is not None and not report.cases and unavailable:
        raise BackendUnavailableError(
            f"no benchmark backend available: tried {', '.join(backends)}")
    return report


def estimate_run_seconds(resolved, warmup: int = 5,
                         sample_steps: int = 20) -> tuple:
    """(seconds_per_step, full-run seconds) extrapolated from a sample."""
    per_step, _, _, _ = _timed_loop(resolved, resolved.backend, warmup,
                                    sample_steps)
    return per_step, per_step * resolved.domain.n_steps
