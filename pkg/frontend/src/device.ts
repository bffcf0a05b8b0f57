/**
 * Host-visible model of the GPU resident state: nine single-precision
 * field volumes (the slice-atlas render targets), the three medium
 * parameter volumes (3D textures) and the 2D trace record buffer.
 *
 * The record buffer is written one column per step on the device and
 * read back exactly once, after the final step — readRecords() enforces
 * both directions of that contract.
 */

import {
  FIELD_NAMES,
  FieldName,
  GridDims,
  cellCount,
} from "./types.js";

export class DeviceFieldSet {
  readonly dims: GridDims;
  readonly paramDims: GridDims;
  readonly fields: Record<FieldName, Float32Array>;
  readonly rho: Float32Array;
  readonly lam: Float32Array;
  readonly mu: Float32Array;
  /** Record buffer, row-major (rows = receiver-component, cols = steps). */
  readonly records: Float32Array;
  readonly recordRows: number;
  readonly recordCols: number;

  private runComplete = false;
  private recordsRead = false;

  constructor(dims: GridDims, paramDims: GridDims, recordRows: number, recordCols: number) {
    this.dims = { ...dims };
    this.paramDims = { ...paramDims };
    const n = cellCount(dims);
    const entries = {} as Record<FieldName, Float32Array>;
    for (const name of FIELD_NAMES) {
      entries[name] = new Float32Array(n); // device textures start cleared
    }
    this.fields = entries;
    const np = cellCount(paramDims);
    this.rho = new Float32Array(np);
    this.lam = new Float32Array(np);
    this.mu = new Float32Array(np);
    this.recordRows = recordRows;
    this.recordCols = recordCols;
    this.records = new Float32Array(recordRows * recordCols);
  }

  uploadParams(rho: ArrayLike<number>, lam: ArrayLike<number>, mu: ArrayLike<number>): void {
    const np = cellCount(this.paramDims);
    if (rho.length !== np || lam.length !== np || mu.length !== np) {
      throw new Error(
        `parameter arrays must have ${np} cells, got ` +
          `${rho.length}/${lam.length}/${mu.length}`,
      );
    }
    this.rho.set(rho);
    this.lam.set(lam);
    this.mu.set(mu);
  }

  uploadField(name: FieldName, data: ArrayLike<number>): void {
    const n = cellCount(this.dims);
    if (data.length !== n) {
      throw new Error(`field ${name} must have ${n} cells, got ${data.length}`);
    }
    this.fields[name].set(data);
  }

  /** Debug/test readback of one field volume (not part of the run flow). */
  readField(name: FieldName): Float32Array {
    return this.fields[name].slice();
  }

  /** Called by the pipeline after the last step completes. */
  markRunComplete(): void {
    this.runComplete = true;
  }

  /**
   * The one device-to-host transfer of the run: the full record buffer.
   * Refuses to read early (the buffer is still being written) and
   * refuses to read twice.
   */
  readRecords(): Float32Array {
    if (!this.runComplete) {
      throw new Error("record buffer read attempted before the final step");
    }
    if (this.recordsRead) {
      throw new Error("record buffer already retrieved; reads happen exactly once");
    }
    this.recordsRead = true;
    return this.records.slice();
  }
}
