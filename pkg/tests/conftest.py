"""Shared builders for metric domains, uniform media and field states."""

import sys
from datetime import datetime, timezone
from types import SimpleNamespace

import numpy as np
import pytest

from wavesim.fields import FieldSet
from wavesim.geometry import GeographicBounds, SimulationDomain
from wavesim.medium import ParameterVolume, lame_from_velocities
from wavesim.sponge import SpongeProfile

EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


def metric_domain(nx=16, ny=16, nz=16, step=100.0, dt=1e-3, n_steps=10,
                  depth_min_km=0.0) -> SimulationDomain:
    """Domain with exact metric cell sizes (bounds are nominal only)."""
    bounds = GeographicBounds(
        lat_min=0.0, lat_max=1.0, lon_min=0.0, lon_max=1.0,
        depth_min=depth_min_km, depth_max=depth_min_km + nz * step / 1000.0)
    return SimulationDomain(bounds=bounds, nx=nx, ny=ny, nz=nz,
                            size_x=nx * step, size_y=ny * step,
                            size_z=nz * step, dt=dt, n_steps=n_steps,
                            start_time=EPOCH)


def uniform_volume(shape=(4, 4, 4), rho=2700.0, vp=6000.0, vs=3464.0,
                   surface_z=0.0) -> ParameterVolume:
    """Constant medium (velocities in m/s, density in kg/m^3)."""
    lam, mu = lame_from_velocities(vp, vs, rho)
    full = np.full(shape, dtype=np.float64, fill_value=rho)
    return ParameterVolume(rho=full,
                           lam=np.full(shape, lam, dtype=np.float64),
                           mu=np.full(shape, mu, dtype=np.float64),
                           surface_z=surface_z)


def random_fields(shape, dtype=np.float64, seed=0, scale=1.0) -> FieldSet:
    rng = np.random.default_rng(seed)
    fields = FieldSet.zeros(shape, dtype)
    for name in ("vx", "vy", "vz", "sxx", "syy", "szz", "sxy", "sxz", "syz"):
        arr = fields.component(name)
        arr[...] = (scale * rng.standard_normal(shape)).astype(dtype)
    return fields


def manual_scenario(domain, volume, source, receivers=(),
                    sponge=None, backend="cpu-serial", precision="float64",
                    medium_cache=True, divergence_check_interval=10,
                    threads=None):
    """Duck-typed resolved scenario for direct solver runs."""
    return SimpleNamespace(
        domain=domain, volume=volume, sponge=sponge or SpongeProfile.disabled(),
        source=source, receivers=tuple(receivers), backend=backend,
        precision=precision, medium_cache=medium_cache,
        divergence_check_interval=divergence_check_interval, threads=threads)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# Acceptance criteria record their verdicts here so the summary survives
# output capture; see tests/test_acceptance.py.
_acceptance_results: list[tuple[str, bool]] = []


def _acceptance_registry() -> list:
    """The one shared verdict list, however this module was imported.

    pytest loads this file as top-level ``conftest`` while the tests
    import ``tests.conftest``; both copies must use the same list.
    """
    for name in ("conftest", "tests.conftest"):
        mod = sys.modules.get(name)
        if mod is not None:
            return mod._acceptance_results
    return _acceptance_results


def record_acceptance(name: str, passed: bool) -> None:
    _acceptance_registry().append((name, passed))


def pytest_terminal_summary(terminalreporter):
    results = _acceptance_registry()
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in results:
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[acceptance] {name}: {verdict}")
