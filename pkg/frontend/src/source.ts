/**
 * Moment-tensor point source: wavelet evaluation and the per-step
 * injection points for the inject pass.  All host-side math is double
 * precision; each point's finished increment is rounded to binary32
 * when it becomes a vertex attribute, matching the reference solver's
 * rounding of the same quantity.
 */

import { InjectPoint } from "./emulator.js";
import { mirroredIndex } from "./samplers.js";
import { GridDims, STAGGER_OFFSETS, StressName } from "./types.js";

export type StfKind = "ricker" | "gaussian-derivative";

export interface SourceTimeFunction {
  kind: StfKind;
  peakFrequency: number;
  /** The wavelet's own peak time, seconds. */
  delay: number;
}

/** Wavelet amplitude at time t on the wavelet's own clock (peak = 1). */
export function evaluateStf(stf: SourceTimeFunction, t: number): number {
  const a = Math.PI * stf.peakFrequency * (t - stf.delay);
  if (stf.kind === "ricker") {
    const u = a * a;
    return (1.0 - 2.0 * u) * Math.exp(-u);
  }
  return -Math.sqrt(2.0) * a * Math.exp(0.5 - a * a);
}

export interface SourceSpec {
  /** (mxx, myy, mzz, mxy, mxz, myz), N*m. */
  tensorEntries: [number, number, number, number, number, number];
  /** Fractional cell position of the centroid. */
  gridPosition: [number, number, number];
  stf: SourceTimeFunction;
  /** Simulation time of the wavelet peak, seconds. */
  peakTime: number;
  /** Injection polarity, +1 or -1. */
  sign: number;
}

const TENSOR_COMPONENTS: readonly StressName[] = ["sxx", "syy", "szz", "sxy", "sxz", "syz"];
const COMPONENT_SLOT: Record<StressName, number> = {
  sxx: 0,
  syy: 1,
  szz: 2,
  sxy: 3,
  sxz: 4,
  syz: 5,
};

interface Node {
  cell: [number, number, number];
  weight: number;
}

interface Target {
  slot: number;
  entry: number;
  nodes: Node[];
}

/**
 * Precomputed injection stencil: each tensor entry spreads over the 8
 * nodes of its stress component's staggered lattice around the source,
 * with trilinear weights (mirrored back inside at the grid edge).
 */
export class SourcePlan {
  readonly source: SourceSpec;
  readonly cellVolume: number;
  private readonly targets: Target[];

  constructor(source: SourceSpec, dims: GridDims, dx: number, dy: number, dz: number) {
    const [gx, gy, gz] = source.gridPosition;
    if (
      !(gx >= 0.0 && gx <= dims.nx - 1 && gy >= 0.0 && gy <= dims.ny - 1 && gz >= 0.0 && gz <= dims.nz - 1)
    ) {
      throw new Error(`source grid position (${gx}, ${gy}, ${gz}) outside the grid`);
    }
    this.source = source;
    this.cellVolume = dx * dy * dz;
    this.targets = [];
    for (let t = 0; t < TENSOR_COMPONENTS.length; t += 1) {
      const comp = TENSOR_COMPONENTS[t];
      const [ox, oy, oz] = STAGGER_OFFSETS[comp];
      const cx = gx - ox;
      const cy = gy - oy;
      const cz = gz - oz;
      const ix = Math.floor(cx);
      const iy = Math.floor(cy);
      const iz = Math.floor(cz);
      const tx = cx - ix;
      const ty = cy - iy;
      const tz = cz - iz;
      const nodes: Node[] = [];
      for (const ddx of [0, 1]) {
        for (const ddy of [0, 1]) {
          for (const ddz of [0, 1]) {
            const weight =
              (ddx ? tx : 1.0 - tx) * (ddy ? ty : 1.0 - ty) * (ddz ? tz : 1.0 - tz);
            nodes.push({
              cell: [
                mirroredIndex(ix + ddx, dims.nx),
                mirroredIndex(iy + ddy, dims.ny),
                mirroredIndex(iz + ddz, dims.nz),
              ],
              weight,
            });
          }
        }
      }
      this.targets.push({ slot: COMPONENT_SLOT[comp], entry: source.tensorEntries[t], nodes });
    }
  }

  /** Wavelet amplitude at simulation time t (peaks at peakTime). */
  amplitude(t: number): number {
    return evaluateStf(this.source.stf, t - this.source.peakTime + this.source.stf.delay);
  }

  /** Vertex data of the inject pass for the step starting at time t. */
  pointsAt(t: number, dt: number): InjectPoint[] {
    const amp = this.amplitude(t);
    const base = (this.source.sign * amp * dt) / this.cellVolume;
    const points: InjectPoint[] = [];
    for (const target of this.targets) {
      const amount = base * target.entry;
      for (const node of target.nodes) {
        points.push({
          cell: node.cell,
          comp: target.slot,
          amount: Math.fround(amount * node.weight),
        });
      }
    }
    return points;
  }
}
