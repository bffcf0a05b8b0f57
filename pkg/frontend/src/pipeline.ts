/**
 * The full render loop: per step, additive stress pass, stress damp,
 * source injection, additive velocity pass, velocity damp, then the
 * record pass writing one column of the trace buffer.  This mirrors the
 * reference solver's phase order (stress update, inject at t = n * dt,
 * velocity update, record sample n).
 *
 * Field textures start cleared; the run's only device-to-host transfer
 * is readTraces() after the final step, allowed exactly once.
 */

import { DeviceFieldSet } from "./device.js";
import {
  KernelResources,
  RecordPoint,
  makeKernelResources,
  runDampPass,
  runInjectPass,
  runRecordPass,
  runStressPass,
  runVelocityPass,
} from "./emulator.js";
import { SourcePlan, SourceSpec } from "./source.js";
import { GridDims, SpongeConfig } from "./types.js";

export interface ReceiverSpec {
  name: string;
  /** Fractional cell position, strictly inside the grid. */
  gridPosition: [number, number, number];
}

export interface RunConfig {
  dims: GridDims;
  paramDims: GridDims;
  dx: number;
  dy: number;
  dz: number;
  dt: number;
  nSteps: number;
  /** Local z of the free surface in metres; <= 0 means no vacuum. */
  surfaceZ: number;
  sponge: SpongeConfig;
  /** Raw parameter volumes, C-order, length = paramDims cells. */
  rho: ArrayLike<number>;
  lam: ArrayLike<number>;
  mu: ArrayLike<number>;
  source: SourceSpec;
  receivers: ReceiverSpec[];
}

export interface DeviceTraces {
  /** Rows = receiver-major (vx, vy, vz) pairs; columns = steps. */
  data: Float32Array;
  rows: number;
  cols: number;
  stations: string[];
  dt: number;
  rowIndex(station: string, component: "vx" | "vy" | "vz"): number;
  trace(station: string, component: "vx" | "vy" | "vz"): Float32Array;
}

const COMPONENTS = ["vx", "vy", "vz"] as const;

export class GpuRun {
  readonly device: DeviceFieldSet;
  readonly config: RunConfig;
  readonly resources: KernelResources;
  private readonly plan: SourcePlan;
  private readonly recordPoints: RecordPoint[];
  private stepsDone = 0;

  constructor(config: RunConfig) {
    const { dims } = config;
    for (const r of config.receivers) {
      const [gx, gy, gz] = r.gridPosition;
      if (!(gx > 0 && gx < dims.nx - 1 && gy > 0 && gy < dims.ny - 1 && gz > 0 && gz < dims.nz - 1)) {
        throw new Error(`receiver ${r.name} position (${gx}, ${gy}, ${gz}) not strictly inside the grid`);
      }
    }
    this.config = config;
    this.device = new DeviceFieldSet(dims, config.paramDims, config.receivers.length * 3, config.nSteps);
    this.device.uploadParams(config.rho, config.lam, config.mu);
    this.resources = makeKernelResources(this.device, {
      dt: config.dt,
      dx: config.dx,
      dy: config.dy,
      dz: config.dz,
      surfaceZ: config.surfaceZ,
      sponge: config.sponge,
    });
    this.plan = new SourcePlan(config.source, dims, config.dx, config.dy, config.dz);
    this.recordPoints = [];
    config.receivers.forEach((r, ri) => {
      COMPONENTS.forEach((comp, ci) => {
        this.recordPoints.push({
          row: ri * 3 + ci,
          cell: [
            Math.fround(r.gridPosition[0]),
            Math.fround(r.gridPosition[1]),
            Math.fround(r.gridPosition[2]),
          ],
          comp: ci as 0 | 1 | 2,
        });
      });
    });
  }

  get stepsCompleted(): number {
    return this.stepsDone;
  }

  /** Advance one time step (n = stepsCompleted). */
  step(): void {
    if (this.stepsDone >= this.config.nSteps) {
      throw new Error("run already complete");
    }
    const n = this.stepsDone;
    const t = n * this.config.dt;
    runStressPass(this.device, this.resources);
    runDampPass(this.device, this.resources, "stress");
    runInjectPass(this.device, this.plan.pointsAt(t, this.config.dt));
    runVelocityPass(this.device, this.resources);
    runDampPass(this.device, this.resources, "velocity");
    runRecordPass(this.device, this.resources, this.recordPoints, n);
    this.stepsDone += 1;
    if (this.stepsDone === this.config.nSteps) {
      this.device.markRunComplete();
    }
  }

  runAll(onStep?: (n: number) => void): void {
    while (this.stepsDone < this.config.nSteps) {
      this.step();
      if (onStep) {
        onStep(this.stepsDone);
      }
    }
  }

  /**
   * Read the record buffer back from the device — the single readback
   * of a run, valid only once all steps have completed.
   */
  readTraces(): DeviceTraces {
    const data = this.device.readRecords();
    const stations = this.config.receivers.map((r) => r.name);
    const cols = this.config.nSteps;
    const rowIndex = (station: string, component: "vx" | "vy" | "vz"): number => {
      const si = stations.indexOf(station);
      if (si < 0) {
        throw new Error(`unknown station ${station}`);
      }
      return si * 3 + COMPONENTS.indexOf(component);
    };
    return {
      data,
      rows: this.config.receivers.length * 3,
      cols,
      stations,
      dt: this.config.dt,
      rowIndex,
      trace: (station, component) => {
        const row = rowIndex(station, component);
        return data.subarray(row * cols, (row + 1) * cols);
      },
    };
  }
}
