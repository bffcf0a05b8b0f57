import { beforeAll, describe, expect, it } from "vitest";

import { maxRelDeviation } from "../src/compare.js";
import { DeviceTraces, GpuRun, RunConfig } from "../src/pipeline.js";
import { SourcePlan, SourceSpec } from "../src/source.js";
import { GridDims, SPONGE_DISABLED, SpongeConfig } from "../src/types.js";
import { loadF32, loadF64, loadMeta } from "./helpers.js";

interface ScenarioMeta {
  dims: [number, number, number];
  param_dims: [number, number, number];
  dx: number;
  dy: number;
  dz: number;
  dt: number;
  n_steps: number;
  surface_z: number;
  sponge: SpongeConfig;
  source: {
    tensor_entries: [number, number, number, number, number, number];
    grid_position: [number, number, number];
    stf: { kind: "ricker" | "gaussian-derivative"; peak_frequency: number; delay: number };
    peak_time: number;
    sign: number;
  };
  receivers: Array<{ name: string; grid_position: [number, number, number] }>;
}

function sourceSpec(meta: ScenarioMeta): SourceSpec {
  return {
    tensorEntries: meta.source.tensor_entries,
    gridPosition: meta.source.grid_position,
    stf: {
      kind: meta.source.stf.kind,
      peakFrequency: meta.source.stf.peak_frequency,
      delay: meta.source.stf.delay,
    },
    peakTime: meta.source.peak_time,
    sign: meta.source.sign,
  };
}

function scenarioConfig(meta: ScenarioMeta): RunConfig {
  return {
    dims: { nx: meta.dims[0], ny: meta.dims[1], nz: meta.dims[2] },
    paramDims: { nx: meta.param_dims[0], ny: meta.param_dims[1], nz: meta.param_dims[2] },
    dx: meta.dx,
    dy: meta.dy,
    dz: meta.dz,
    dt: meta.dt,
    nSteps: meta.n_steps,
    surfaceZ: meta.surface_z,
    sponge: meta.sponge,
    rho: loadF32("e2e_rho"),
    lam: loadF32("e2e_lam"),
    mu: loadF32("e2e_mu"),
    source: sourceSpec(meta),
    receivers: meta.receivers.map((r) => ({ name: r.name, gridPosition: r.grid_position })),
  };
}

/** Small synthetic run for the contract tests (cheap to step). */
function tinyConfig(nSteps: number): RunConfig {
  const dims: GridDims = { nx: 8, ny: 8, nz: 8 };
  return {
    dims,
    paramDims: { nx: 2, ny: 2, nz: 2 },
    dx: 100.0,
    dy: 100.0,
    dz: 100.0,
    dt: 0.001,
    nSteps,
    surfaceZ: 0.0,
    sponge: SPONGE_DISABLED,
    rho: new Float32Array(8).fill(2700.0),
    lam: new Float32Array(8).fill(3.24e10),
    mu: new Float32Array(8).fill(3.24e10),
    source: {
      tensorEntries: [1e12, 1e12, 1e12, 0, 0, 0],
      gridPosition: [4.0, 4.0, 4.0],
      stf: { kind: "ricker", peakFrequency: 20.0, delay: 0.075 },
      peakTime: 0.075,
      sign: -1.0,
    },
    receivers: [{ name: "T1", gridPosition: [3.5, 4.2, 4.8] }],
  };
}

describe("layered free-surface scenario", () => {
  const meta = loadMeta<ScenarioMeta>("e2e");
  const wantTraces = loadF64("e2e_traces");
  let traces: DeviceTraces;

  beforeAll(() => {
    const run = new GpuRun(scenarioConfig(meta));
    run.runAll();
    traces = run.readTraces();
  });

  it("ran the full step count", () => {
    expect(traces.rows).toBe(meta.receivers.length * 3);
    expect(traces.cols).toBe(meta.n_steps);
    expect(traces.stations).toEqual(meta.receivers.map((r) => r.name));
  });

  it("produces finite, non-trivial motion", () => {
    let maxAbs = 0;
    for (const v of traces.data) {
      expect(Number.isFinite(v)).toBe(true);
      maxAbs = Math.max(maxAbs, Math.abs(v));
    }
    // the reference run peaks at ~5.4e-4 m/s
    expect(maxAbs).toBeGreaterThan(1e-4);
    expect(maxAbs).toBeLessThan(1e-2);
  });

  it("stays within 1e-3 of the reference traces at every station", () => {
    const cols = meta.n_steps;
    for (let si = 0; si < meta.receivers.length; si += 1) {
      for (const [ci, comp] of (["vx", "vy", "vz"] as const).entries()) {
        const row = si * 3 + ci;
        const got = traces.trace(meta.receivers[si].name, comp);
        const want = wantTraces.subarray(row * cols, (row + 1) * cols);
        const dev = maxRelDeviation(got, want);
        expect(dev, `${meta.receivers[si].name}/${comp}`).toBeLessThanOrEqual(1e-3);
      }
    }
  });

  it("indexes rows receiver-major with vx, vy, vz per station", () => {
    expect(traces.rowIndex("R1", "vx")).toBe(0);
    expect(traces.rowIndex("R3", "vz")).toBe(2 * 3 + 2);
    expect(traces.trace("R5", "vy").length).toBe(meta.n_steps);
    expect(() => traces.rowIndex("nope", "vx")).toThrow(/unknown station/);
  });

  it("uses a step size that is exact in binary32", () => {
    // uniform rounding of dt would otherwise drift the two computations
    // coherently apart over hundreds of steps
    expect(Math.fround(meta.dt)).toBe(meta.dt);
  });

  it("drives the source with the reference wavelet amplitudes", () => {
    const want = loadF64("e2e_amplitudes");
    const dims: GridDims = { nx: meta.dims[0], ny: meta.dims[1], nz: meta.dims[2] };
    const plan = new SourcePlan(sourceSpec(meta), dims, meta.dx, meta.dy, meta.dz);
    for (let n = 0; n < meta.n_steps; n += 1) {
      const got = plan.amplitude(n * meta.dt);
      expect(Math.abs(got - want[n])).toBeLessThanOrEqual(1e-12 * Math.max(1.0, Math.abs(want[n])));
    }
  });
});

describe("run and readback contract", () => {
  it("refuses trace readback before the final step", () => {
    const run = new GpuRun(tinyConfig(4));
    run.step();
    expect(() => run.readTraces()).toThrow(/before the final step/);
    run.runAll();
    const traces = run.readTraces();
    expect(traces.cols).toBe(4);
    expect(() => run.readTraces()).toThrow(/exactly once/);
  });

  it("refuses to step past the configured run length", () => {
    const run = new GpuRun(tinyConfig(2));
    run.runAll();
    expect(run.stepsCompleted).toBe(2);
    expect(() => run.step()).toThrow(/already complete/);
  });

  it("rejects receivers on or outside the grid boundary", () => {
    const config = tinyConfig(2);
    config.receivers = [{ name: "bad", gridPosition: [7.0, 4.0, 4.0] }];
    expect(() => new GpuRun(config)).toThrow(/not strictly inside/);
  });

  it("records mostly non-zero samples once the wavefront arrives", () => {
    const run = new GpuRun(tinyConfig(30));
    run.runAll();
    const traces = run.readTraces();
    const tail = Array.from(traces.data.subarray(traces.cols - 10));
    expect(tail.some((v) => v !== 0)).toBe(true);
  });
});
