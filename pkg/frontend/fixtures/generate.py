#!/usr/bin/env python3
"""Generate the parity fixtures for the GL kernel package.

Everything comes from the wavesim package's public API: solver state
phases for the kernel-parity volumes, the Recorder for sampling parity,
and the run driver for the end-to-end scenario.  Arrays are written as
.npy files plus one JSON sidecar per fixture describing the scenario.

Run from this directory:  python3 generate.py
"""

import json
from datetime import datetime, timezone
from pathlib import Path
from types import SimpleNamespace

import numpy as np

import wavesim as ws

OUT = Path(__file__).resolve().parent / "data"
EPOCH = datetime(2016, 1, 17, 8, 29, 25, tzinfo=timezone.utc)

FIELD_NAMES = ("vx", "vy", "vz", "sxx", "syy", "szz", "sxy", "sxz", "syz")


def metric_domain(nx, ny, nz, step, dt, n_steps, depth_min_km=0.0):
    """Domain with exact metric cell sizes (bounds are nominal only)."""
    bounds = ws.GeographicBounds(
        lat_min=0.0, lat_max=1.0, lon_min=0.0, lon_max=1.0,
        depth_min=depth_min_km, depth_max=depth_min_km + nz * step / 1000.0)
    return ws.SimulationDomain(
        bounds=bounds, nx=nx, ny=ny, nz=nz,
        size_x=nx * step, size_y=ny * step, size_z=nz * step,
        dt=dt, n_steps=n_steps, start_time=EPOCH)


def sponge_dict(sp):
    return {
        "width": sp.width, "strength": sp.strength,
        "x_min": sp.x_min, "x_max": sp.x_max,
        "y_min": sp.y_min, "y_max": sp.y_max,
        "z_min": sp.z_min, "z_max": sp.z_max,
    }


def save(name, arr):
    np.save(OUT / f"{name}.npy", arr)


def fill_random_fields(fields, seed, v_scale=1.0, s_scale=2.0e7):
    rng = np.random.default_rng(seed)
    scales = dict(vx=v_scale, vy=v_scale, vz=v_scale,
                  sxx=s_scale, syy=s_scale, szz=s_scale,
                  sxy=s_scale, sxz=s_scale, syz=s_scale)
    for comp in FIELD_NAMES:
        arr = fields.component(comp)
        arr[...] = (scales[comp] * rng.standard_normal(arr.shape)).astype(arr.dtype)


def kernel_parity_fixture(name, *, depth_min_km, model_rows, sponge, seed,
                          n_steps=10, save_precompute=False):
    """Random-field kernel parity: fields in, fields out after n_steps."""
    step = 100.0
    dt = 0.0078125  # under the stability limit and exact in binary32
    domain = metric_domain(32, 32, 32, step, dt, n_steps,
                           depth_min_km=depth_min_km)
    model = ws.LayeredModel.from_rows(model_rows)
    volume = ws.build_parameter_volume(model, domain, shape=(8, 8, 8))
    state = ws.SolverState(domain, volume, sponge, dtype=np.float32,
                           cache_medium=True)

    fields = ws.FieldSet.zeros(domain.shape, np.float32)
    fill_random_fields(fields, seed)
    # Velocities above the free surface stay pinned at zero; start them
    # there so the zero-increment device path and the pinning CPU path
    # agree from the first step.
    rho_vx, vac_vx, rho_vy, vac_vy, rho_vz, vac_vz = state.velocity_params()
    fields.vx[vac_vx.astype(bool)] = 0.0
    fields.vy[vac_vy.astype(bool)] = 0.0
    fields.vz[vac_vz.astype(bool)] = 0.0

    for comp in FIELD_NAMES:
        save(f"{name}_in_{comp}", fields.component(comp))

    if save_precompute:
        save(f"{name}_stag_rho_vx", rho_vx)
        save(f"{name}_stag_rho_vy", rho_vy)
        save(f"{name}_stag_rho_vz", rho_vz)
        save(f"{name}_stag_vac_vx", vac_vx)
        save(f"{name}_stag_vac_vy", vac_vy)
        save(f"{name}_stag_vac_vz", vac_vz)
        lam_n, mu_n, mu_xy, mu_xz, mu_yz = state.stress_params()
        save(f"{name}_stag_lam_n", lam_n)
        save(f"{name}_stag_mu_n", mu_n)
        save(f"{name}_stag_mu_xy", mu_xy)
        save(f"{name}_stag_mu_xz", mu_xz)
        save(f"{name}_stag_mu_yz", mu_yz)
        save(f"{name}_weights", state.weights)
        save(f"{name}_band_i", state.band_i)
        save(f"{name}_band_h", state.band_h)

    for _ in range(n_steps):
        state.stress_phase(fields)
        state.velocity_phase(fields)

    for comp in FIELD_NAMES:
        save(f"{name}_out_{comp}", fields.component(comp))

    save(f"{name}_rho", volume.rho.astype(np.float32))
    save(f"{name}_lam", volume.lam.astype(np.float32))
    save(f"{name}_mu", volume.mu.astype(np.float32))

    meta = {
        "dims": list(domain.shape),
        "param_dims": list(volume.shape),
        "dx": domain.dx, "dy": domain.dy, "dz": domain.dz,
        "dt": dt, "n_steps": n_steps,
        "surface_z": volume.surface_z,
        "sponge": sponge_dict(sponge),
        "seed": seed,
    }
    (OUT / f"{name}.json").write_text(json.dumps(meta, indent=2))
    print(f"{name}: wrote {n_steps}-step kernel parity fixture")


def record_parity_fixture():
    """Random velocities sampled once at fractional receiver positions."""
    domain = metric_domain(24, 24, 24, 100.0, 0.001, 1)
    fields = ws.FieldSet.zeros(domain.shape, np.float32)
    fill_random_fields(fields, seed=77)

    positions = [
        (5.3, 7.8, 11.2),
        (12.0, 12.0, 12.0),
        (1.4, 21.6, 3.9),
        (18.75, 2.25, 19.5),
        (9.1, 16.7, 6.45),
    ]
    receivers = [ws.Receiver(name=f"P{n}", grid_position=p)
                 for n, p in enumerate(positions)]
    rec = ws.Recorder(receivers, domain)
    rec.record(fields, 0)

    for comp in ("vx", "vy", "vz"):
        save(f"record_{comp}", fields.component(comp))
    save("record_expected", rec.data[:, 0].copy())
    meta = {
        "dims": list(domain.shape),
        "positions": [list(p) for p in positions],
    }
    (OUT / "record.json").write_text(json.dumps(meta, indent=2))
    print("record: wrote sampling parity fixture")


def end_to_end_fixture():
    """Full 64x64x32, 200-step layered run with a free surface."""
    nx, ny, nz = 64, 64, 32
    step = 250.0
    dt = 0.015625  # exact in binary32; limit here is 0.0206 s
    n_steps = 200
    domain = metric_domain(nx, ny, nz, step, dt, n_steps, depth_min_km=-2.0)
    model = ws.LayeredModel.from_rows([
        [0.0, 4.0, 2.31, 2.4],
        [2.0, 6.0, 3.464, 2.7],
    ])
    volume = ws.build_parameter_volume(model, domain, shape=(16, 16, 8))
    sponge = ws.SpongeProfile()  # defaults; face under the surface open

    stf = ws.SourceTimeFunction(kind="ricker", peak_frequency=1.0)
    source = ws.MomentTensorSource(
        moment=((1.0e15, 3.0e14, 2.0e14),
                (3.0e14, 8.0e14, -4.0e14),
                (2.0e14, -4.0e14, 1.2e15)),
        grid_position=(32.0, 32.0, 14.5),
        stf=stf,
    )
    receivers = [
        ws.Receiver(name="R1", grid_position=(20.3, 18.7, 9.4)),
        ws.Receiver(name="R2", grid_position=(44.6, 40.2, 10.8)),
        ws.Receiver(name="R3", grid_position=(32.5, 48.9, 12.6)),
        ws.Receiver(name="R4", grid_position=(12.2, 44.4, 16.3)),
        ws.Receiver(name="R5", grid_position=(50.7, 14.9, 20.1)),
    ]

    scenario = SimpleNamespace(
        domain=domain, volume=volume, sponge=sponge, source=source,
        receivers=tuple(receivers), backend="cpu-serial",
        precision="float32", medium_cache=True,
        divergence_check_interval=10, threads=None)
    result = ws.run(scenario)
    assert not result.diverged, "reference run diverged"
    assert result.steps_completed == n_steps

    save("e2e_traces", result.traces.data)
    save("e2e_rho", volume.rho.astype(np.float32))
    save("e2e_lam", volume.lam.astype(np.float32))
    save("e2e_mu", volume.mu.astype(np.float32))
    amps = np.array([source.amplitude(n * dt) for n in range(n_steps)],
                    dtype=np.float64)
    save("e2e_amplitudes", amps)

    meta = {
        "dims": [nx, ny, nz],
        "param_dims": list(volume.shape),
        "dx": domain.dx, "dy": domain.dy, "dz": domain.dz,
        "dt": dt, "n_steps": n_steps,
        "surface_z": volume.surface_z,
        "sponge": sponge_dict(sponge),
        "source": {
            "tensor_entries": list(source.tensor_entries),
            "grid_position": list(source.grid_position),
            "stf": {"kind": stf.kind, "peak_frequency": stf.peak_frequency,
                    "delay": stf.delay},
            "peak_time": source.peak_time,
            "sign": source.sign,
        },
        "receivers": [{"name": r.name, "grid_position": list(r.grid_position)}
                      for r in receivers],
        "components": ["vx", "vy", "vz"],
    }
    (OUT / "e2e.json").write_text(json.dumps(meta, indent=2))
    print(f"e2e: wrote {n_steps}-step reference traces "
          f"(max |v| {np.abs(result.traces.data).max():.3e})")


def main():
    OUT.mkdir(exist_ok=True)
    kernel_parity_fixture(
        "uniform",
        depth_min_km=0.0,
        model_rows=[[0.0, 6.0, 3.464, 2.70]],
        sponge=ws.SpongeProfile.disabled(),
        seed=11,
    )
    kernel_parity_fixture(
        "layered",
        depth_min_km=-0.8,
        model_rows=[[0.0, 4.0, 2.31, 2.4], [1.0, 6.0, 3.464, 2.7]],
        sponge=ws.SpongeProfile(width=6, strength=0.05),
        seed=23,
        save_precompute=True,
    )
    record_parity_fixture()
    end_to_end_fixture()


if __name__ == "__main__":
    main()
