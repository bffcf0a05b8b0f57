/**
 * Host-side precomputation for the GL pipeline: mirrored index folding,
 * trilinear lattice resampling of the medium parameters onto staggered
 * component positions, absorbing-sponge weights, and the reduced-order
 * bands around the free surface.
 *
 * The resampling here models what the device's trilinear sampler (with
 * mirrored-repeat wrap) returns for the fixed per-cell sample positions;
 * since those positions never change during a run, the pipeline bakes
 * the results once instead of re-filtering every pass.  Math is IEEE
 * double, rounded once to single precision at the end — the same
 * convention the CPU reference package uses.
 */

import { GridDims, SpongeConfig } from "./types.js";

/**
 * Fold an out-of-range index back into [0, n) by mirror repetition.
 * Periodic with period 2n; reads just past either end reflect inside
 * (-1 -> 0, n -> n-1).
 */
export function mirroredIndex(i: number, n: number): number {
  if (n < 1) {
    throw new Error("n must be positive");
  }
  const period = 2 * n;
  // the inner % can produce -0; adding the period first avoids it
  const m = ((i % period) + period) % period;
  return m >= n ? period - 1 - m : m;
}

/** Per-index lookup tables for the four stencil shifts along one axis. */
export interface ShiftTables {
  m2: Int32Array;
  m1: Int32Array;
  p1: Int32Array;
  p2: Int32Array;
}

export function shiftTables(n: number): ShiftTables {
  const m2 = new Int32Array(n);
  const m1 = new Int32Array(n);
  const p1 = new Int32Array(n);
  const p2 = new Int32Array(n);
  for (let i = 0; i < n; i += 1) {
    m2[i] = mirroredIndex(i - 2, n);
    m1[i] = mirroredIndex(i - 1, n);
    p1[i] = mirroredIndex(i + 1, n);
    p2[i] = mirroredIndex(i + 2, n);
  }
  return { m2, m1, p1, p2 };
}

function lerp(a: number, b: number, t: number): number {
  // exact at t == 0 and t == 1
  return a * (1.0 - t) + b * t;
}

/**
 * Trilinear interpolation of a C-order volume at a fractional index
 * position, double precision; out-of-range corner lookups fold through
 * `mirroredIndex`.  Interpolates the x pairs first, then y, then z.
 */
export function sampleTrilinear(
  volume: Float64Array | Float32Array,
  dims: GridDims,
  x: number,
  y: number,
  z: number,
): number {
  const { nx, ny, nz } = dims;
  const ix = Math.floor(x);
  const iy = Math.floor(y);
  const iz = Math.floor(z);
  const tx = x - ix;
  const ty = y - iy;
  const tz = z - iz;
  const x0 = mirroredIndex(ix, nx);
  const x1 = mirroredIndex(ix + 1, nx);
  const y0 = mirroredIndex(iy, ny);
  const y1 = mirroredIndex(iy + 1, ny);
  const z0 = mirroredIndex(iz, nz);
  const z1 = mirroredIndex(iz + 1, nz);
  const at = (a: number, b: number, c: number) => volume[(a * ny + b) * nz + c];
  const c00 = lerp(at(x0, y0, z0), at(x1, y0, z0), tx);
  const c10 = lerp(at(x0, y1, z0), at(x1, y1, z0), tx);
  const c01 = lerp(at(x0, y0, z1), at(x1, y0, z1), tx);
  const c11 = lerp(at(x0, y1, z1), at(x1, y1, z1), tx);
  const c0 = lerp(c00, c10, ty);
  const c1 = lerp(c01, c11, ty);
  return lerp(c0, c1, tz);
}

/**
 * Separable trilinear interpolation on the tensor-product lattice
 * xs × ys × zs: one linear interpolation per axis (x, then y, then z)
 * with mirrored corner indices.  Equal to `sampleTrilinear` point by
 * point, including the floating-point operation order.
 */
export function resampleLattice(
  volume: Float64Array | Float32Array,
  volDims: GridDims,
  xs: Float64Array,
  ys: Float64Array,
  zs: Float64Array,
): Float64Array {
  const nx = xs.length;
  const ny = ys.length;
  const nz = zs.length;
  const { nx: vnx, ny: vny, nz: vnz } = volDims;

  const axisPlan = (coords: Float64Array, n: number) => {
    const lo = new Int32Array(coords.length);
    const hi = new Int32Array(coords.length);
    const t = new Float64Array(coords.length);
    for (let i = 0; i < coords.length; i += 1) {
      const base = Math.floor(coords[i]);
      lo[i] = mirroredIndex(base, n);
      hi[i] = mirroredIndex(base + 1, n);
      t[i] = coords[i] - base;
    }
    return { lo, hi, t };
  };

  const px = axisPlan(xs, vnx);
  const py = axisPlan(ys, vny);
  const pz = axisPlan(zs, vnz);

  // reduce x: (vnx, vny, vnz) -> (nx, vny, vnz)
  const stage1 = new Float64Array(nx * vny * vnz);
  for (let i = 0; i < nx; i += 1) {
    const loBase = px.lo[i] * vny * vnz;
    const hiBase = px.hi[i] * vny * vnz;
    const t = px.t[i];
    const outBase = i * vny * vnz;
    for (let r = 0; r < vny * vnz; r += 1) {
      stage1[outBase + r] = lerp(volume[loBase + r], volume[hiBase + r], t);
    }
  }
  // reduce y: (nx, vny, vnz) -> (nx, ny, vnz)
  const stage2 = new Float64Array(nx * ny * vnz);
  for (let i = 0; i < nx; i += 1) {
    for (let j = 0; j < ny; j += 1) {
      const loBase = (i * vny + py.lo[j]) * vnz;
      const hiBase = (i * vny + py.hi[j]) * vnz;
      const t = py.t[j];
      const outBase = (i * ny + j) * vnz;
      for (let r = 0; r < vnz; r += 1) {
        stage2[outBase + r] = lerp(stage1[loBase + r], stage1[hiBase + r], t);
      }
    }
  }
  // reduce z: (nx, ny, vnz) -> (nx, ny, nz)
  const out = new Float64Array(nx * ny * nz);
  for (let i = 0; i < nx; i += 1) {
    for (let j = 0; j < ny; j += 1) {
      const rowBase = (i * ny + j) * vnz;
      const outBase = (i * ny + j) * nz;
      for (let k = 0; k < nz; k += 1) {
        out[outBase + k] = lerp(stage2[rowBase + pz.lo[k]], stage2[rowBase + pz.hi[k]], pz.t[k]);
      }
    }
  }
  return out;
}

/**
 * Resample one parameter volume onto the simulation grid shifted by a
 * staggered component offset.  Both grids span the same physical box,
 * so simulation coordinates are rescaled by the resolution ratio.
 * Returns single precision (one rounding at the end).
 */
export function staggeredParameter(
  volume: Float64Array | Float32Array,
  volDims: GridDims,
  simDims: GridDims,
  offset: readonly [number, number, number],
): Float32Array {
  const axisCoords = (n: number, shift: number, np: number) => {
    const coords = new Float64Array(n);
    const ratio = np / n;
    for (let i = 0; i < n; i += 1) {
      coords[i] = (i + shift) * ratio;
    }
    return coords;
  };
  const xs = axisCoords(simDims.nx, offset[0], volDims.nx);
  const ys = axisCoords(simDims.ny, offset[1], volDims.ny);
  const zs = axisCoords(simDims.nz, offset[2], volDims.nz);
  return Float32Array.from(resampleLattice(volume, volDims, xs, ys, zs));
}

function faceWeight(d: number, sponge: SpongeConfig): number {
  if (d >= sponge.width) {
    return 1.0;
  }
  const a = sponge.strength * (sponge.width - d);
  return Math.exp(-(a * a));
}

function axisWeights(n: number, sponge: SpongeConfig, loOn: boolean, hiOn: boolean): Float64Array {
  const w = new Float64Array(n).fill(1.0);
  for (let i = 0; i < n; i += 1) {
    if (loOn) {
      w[i] *= faceWeight(i, sponge);
    }
    if (hiOn) {
      w[i] *= faceWeight(n - 1 - i, sponge);
    }
  }
  return w;
}

/**
 * Per-cell multiplicative damping weights: within `width` cells of an
 * enabled face the weight is exp(-(strength * (width - d))^2), d being
 * the distance to the face in cells; contributions from several faces
 * multiply.  Composed as (wx * wy) * wz, rounded once to f32.
 */
export function buildSpongeWeights(sponge: SpongeConfig, dims: GridDims): Float32Array {
  const wx = axisWeights(dims.nx, sponge, sponge.x_min, sponge.x_max);
  const wy = axisWeights(dims.ny, sponge, sponge.y_min, sponge.y_max);
  const wz = axisWeights(dims.nz, sponge, sponge.z_min, sponge.z_max);
  const out = new Float32Array(dims.nx * dims.ny * dims.nz);
  let idx = 0;
  for (let i = 0; i < dims.nx; i += 1) {
    for (let j = 0; j < dims.ny; j += 1) {
      const wxy = wx[i] * wy[j];
      for (let k = 0; k < dims.nz; k += 1) {
        out[idx] = wxy * wz[k];
        idx += 1;
      }
    }
  }
  return out;
}

export interface SurfaceBands {
  /** z rows of integer-offset components within 2 cells of the surface. */
  bandI: Uint8Array;
  /** z rows of half-offset components within 2 cells of the surface. */
  bandH: Uint8Array;
}

/**
 * Mark the z rows whose 4th-order stencil footprint would straddle the
 * free surface; those rows use the 2nd-order stencil.  Empty when the
 * grid top is at or below the surface (surfaceZ <= 0: no vacuum).
 */
export function surfaceBands(nz: number, dz: number, surfaceZ: number): SurfaceBands {
  const bandI = new Uint8Array(nz);
  const bandH = new Uint8Array(nz);
  if (surfaceZ > 0.0) {
    const ks = surfaceZ / dz;
    for (let k = 0; k < nz; k += 1) {
      bandI[k] = Math.abs(k - ks) < 2.0 ? 1 : 0;
      bandH[k] = Math.abs(k + 0.5 - ks) < 2.0 ? 1 : 0;
    }
  }
  return { bandI, bandH };
}
