/**
 * Reference executor for the GLSL kernels: each exported pass walks the
 * volume exactly as one instanced draw over the slice atlas would —
 * same reads, same expression trees, same blend step — with every
 * floating-point operation rounded to single precision via Math.fround
 * (for binary32 inputs a double-precision op rounded to binary32 equals
 * the directly rounded binary32 op, so this reproduces IEEE single
 * precision arithmetic op for op).
 *
 * The per-fragment functions mirror the fragment shaders line by line.
 * Parameter sampling (native trilinear + mirrored repeat on the device)
 * happens at fixed per-cell positions, so it is baked once into
 * staggered per-component arrays by makeKernelResources — the values a
 * correctly rounding device sampler returns.
 */

import { DeviceFieldSet } from "./device.js";
import {
  ShiftTables,
  buildSpongeWeights,
  mirroredIndex,
  shiftTables,
  staggeredParameter,
  surfaceBands,
} from "./samplers.js";
import {
  GridDims,
  STAGGER_OFFSETS,
  SpongeConfig,
  VACUUM_DENSITY_THRESHOLD,
  flatIndex,
} from "./types.js";

const f = Math.fround;

/** 4th-order tap weights as the GLSL literals evaluate. */
const C4A = f(9.0 / 8.0);
const C4B = f(1.0 / 24.0);

/** Everything a kernel pass needs besides the device state. */
export interface KernelResources {
  dims: GridDims;
  /** Uniform values as the device receives them (binary32). */
  dt: number;
  dx: number;
  dy: number;
  dz: number;
  bandI: Uint8Array;
  bandH: Uint8Array;
  x: ShiftTables;
  y: ShiftTables;
  z: ShiftTables;
  /** Damping weights (uWeights texture). */
  weights: Float32Array;
  /** Staggered parameter samples per component. */
  rhoVx: Float32Array;
  rhoVy: Float32Array;
  rhoVz: Float32Array;
  vacVx: Uint8Array;
  vacVy: Uint8Array;
  vacVz: Uint8Array;
  lamN: Float32Array;
  muN: Float32Array;
  muXy: Float32Array;
  muXz: Float32Array;
  muYz: Float32Array;
}

export interface ResourceOptions {
  dt: number;
  dx: number;
  dy: number;
  dz: number;
  /** Local z of the free surface in metres; <= 0 means no vacuum. */
  surfaceZ: number;
  sponge: SpongeConfig;
}

export function makeKernelResources(device: DeviceFieldSet, opts: ResourceOptions): KernelResources {
  const dims = device.dims;
  const pd = device.paramDims;
  const stag = (vol: Float32Array, name: keyof typeof STAGGER_OFFSETS) =>
    staggeredParameter(vol, pd, dims, STAGGER_OFFSETS[name]);
  const rhoVx = stag(device.rho, "vx");
  const rhoVy = stag(device.rho, "vy");
  const rhoVz = stag(device.rho, "vz");
  const vacuumMask = (rho: Float32Array) => {
    const m = new Uint8Array(rho.length);
    for (let i = 0; i < rho.length; i += 1) {
      m[i] = rho[i] < VACUUM_DENSITY_THRESHOLD ? 1 : 0;
    }
    return m;
  };
  const bands = surfaceBands(dims.nz, opts.dz, opts.surfaceZ);
  return {
    dims,
    dt: f(opts.dt),
    dx: f(opts.dx),
    dy: f(opts.dy),
    dz: f(opts.dz),
    bandI: bands.bandI,
    bandH: bands.bandH,
    x: shiftTables(dims.nx),
    y: shiftTables(dims.ny),
    z: shiftTables(dims.nz),
    weights: buildSpongeWeights(opts.sponge, dims),
    rhoVx,
    rhoVy,
    rhoVz,
    vacVx: vacuumMask(rhoVx),
    vacVy: vacuumMask(rhoVy),
    vacVz: vacuumMask(rhoVz),
    lamN: stag(device.lam, "sxx"),
    muN: stag(device.mu, "sxx"),
    muXy: stag(device.mu, "sxy"),
    muXz: stag(device.mu, "sxz"),
    muYz: stag(device.mu, "syz"),
  };
}

/**
 * velocity.frag for one cell: the three velocity increments, written
 * into out3.  Zero increment where the staggered density reads vacuum.
 */
export function velocityFragment(
  device: DeviceFieldSet,
  r: KernelResources,
  i: number,
  j: number,
  k: number,
  out3: Float64Array,
): void {
  const { ny, nz } = r.dims;
  const at = (a: number, b: number, c: number) => (a * ny + b) * nz + c;
  const c = at(i, j, k);
  const ixm2 = r.x.m2[i];
  const ixm1 = r.x.m1[i];
  const ixp1 = r.x.p1[i];
  const ixp2 = r.x.p2[i];
  const jym2 = r.y.m2[j];
  const jym1 = r.y.m1[j];
  const jyp1 = r.y.p1[j];
  const jyp2 = r.y.p2[j];
  const kzm2 = r.z.m2[k];
  const kzm1 = r.z.m1[k];
  const kzp1 = r.z.p1[k];
  const kzp2 = r.z.p2[k];
  const { sxx, syy, szz, sxy, sxz, syz } = device.fields;
  const bi = r.bandI[k] !== 0;
  const bh = r.bandH[k] !== 0;
  const { dt, dx, dy, dz } = r;

  // ---- vx at (i+1/2, j, k) ----------------------------------------------
  if (r.vacVx[c]) {
    out3[0] = 0.0;
  } else {
    let d_sxx: number;
    let d_sxy: number;
    let d_sxz: number;
    if (bi) {
      d_sxx = f(f(sxx[at(ixp1, j, k)] - sxx[c]) / dx);
      d_sxy = f(f(sxy[c] - sxy[at(i, jym1, k)]) / dy);
      d_sxz = f(f(sxz[c] - sxz[at(i, j, kzm1)]) / dz);
    } else {
      d_sxx = f(f(f(C4A * f(sxx[at(ixp1, j, k)] - sxx[c]))
                - f(C4B * f(sxx[at(ixp2, j, k)] - sxx[at(ixm1, j, k)]))) / dx);
      d_sxy = f(f(f(C4A * f(sxy[c] - sxy[at(i, jym1, k)]))
                - f(C4B * f(sxy[at(i, jyp1, k)] - sxy[at(i, jym2, k)]))) / dy);
      d_sxz = f(f(f(C4A * f(sxz[c] - sxz[at(i, j, kzm1)]))
                - f(C4B * f(sxz[at(i, j, kzp1)] - sxz[at(i, j, kzm2)]))) / dz);
    }
    out3[0] = f(f(dt / r.rhoVx[c]) * f(f(d_sxx + d_sxy) + d_sxz));
  }

  // ---- vy at (i, j+1/2, k) ----------------------------------------------
  if (r.vacVy[c]) {
    out3[1] = 0.0;
  } else {
    let d_sxy: number;
    let d_syy: number;
    let d_syz: number;
    if (bi) {
      d_sxy = f(f(sxy[c] - sxy[at(ixm1, j, k)]) / dx);
      d_syy = f(f(syy[at(i, jyp1, k)] - syy[c]) / dy);
      d_syz = f(f(syz[c] - syz[at(i, j, kzm1)]) / dz);
    } else {
      d_sxy = f(f(f(C4A * f(sxy[c] - sxy[at(ixm1, j, k)]))
                - f(C4B * f(sxy[at(ixp1, j, k)] - sxy[at(ixm2, j, k)]))) / dx);
      d_syy = f(f(f(C4A * f(syy[at(i, jyp1, k)] - syy[c]))
                - f(C4B * f(syy[at(i, jyp2, k)] - syy[at(i, jym1, k)]))) / dy);
      d_syz = f(f(f(C4A * f(syz[c] - syz[at(i, j, kzm1)]))
                - f(C4B * f(syz[at(i, j, kzp1)] - syz[at(i, j, kzm2)]))) / dz);
    }
    out3[1] = f(f(dt / r.rhoVy[c]) * f(f(d_sxy + d_syy) + d_syz));
  }

  // ---- vz at (i, j, k+1/2) ----------------------------------------------
  if (r.vacVz[c]) {
    out3[2] = 0.0;
  } else {
    let d_sxz: number;
    let d_syz: number;
    let d_szz: number;
    if (bh) {
      d_sxz = f(f(sxz[c] - sxz[at(ixm1, j, k)]) / dx);
      d_syz = f(f(syz[c] - syz[at(i, jym1, k)]) / dy);
      d_szz = f(f(szz[at(i, j, kzp1)] - szz[c]) / dz);
    } else {
      d_sxz = f(f(f(C4A * f(sxz[c] - sxz[at(ixm1, j, k)]))
                - f(C4B * f(sxz[at(ixp1, j, k)] - sxz[at(ixm2, j, k)]))) / dx);
      d_syz = f(f(f(C4A * f(syz[c] - syz[at(i, jym1, k)]))
                - f(C4B * f(syz[at(i, jyp1, k)] - syz[at(i, jym2, k)]))) / dy);
      d_szz = f(f(f(C4A * f(szz[at(i, j, kzp1)] - szz[c]))
                - f(C4B * f(szz[at(i, j, kzp2)] - szz[at(i, j, kzm1)]))) / dz);
    }
    out3[2] = f(f(dt / r.rhoVz[c]) * f(f(d_sxz + d_syz) + d_szz));
  }
}

/**
 * stress.frag for one cell: the six stress increments, written into
 * out6 in (sxx, syy, szz, sxy, sxz, syz) order.
 */
export function stressFragment(
  device: DeviceFieldSet,
  r: KernelResources,
  i: number,
  j: number,
  k: number,
  out6: Float64Array,
): void {
  const { ny, nz } = r.dims;
  const at = (a: number, b: number, c: number) => (a * ny + b) * nz + c;
  const c = at(i, j, k);
  const ixm2 = r.x.m2[i];
  const ixm1 = r.x.m1[i];
  const ixp1 = r.x.p1[i];
  const ixp2 = r.x.p2[i];
  const jym2 = r.y.m2[j];
  const jym1 = r.y.m1[j];
  const jyp1 = r.y.p1[j];
  const jyp2 = r.y.p2[j];
  const kzm2 = r.z.m2[k];
  const kzm1 = r.z.m1[k];
  const kzp1 = r.z.p1[k];
  const kzp2 = r.z.p2[k];
  const { vx, vy, vz } = device.fields;
  const bi = r.bandI[k] !== 0;
  const bh = r.bandH[k] !== 0;
  const { dt, dx, dy, dz } = r;

  // ---- normal stresses at (i, j, k) ---------------------------------------
  let dvx: number;
  let dvy: number;
  let dvz: number;
  if (bi) {
    dvx = f(f(vx[c] - vx[at(ixm1, j, k)]) / dx);
    dvy = f(f(vy[c] - vy[at(i, jym1, k)]) / dy);
    dvz = f(f(vz[c] - vz[at(i, j, kzm1)]) / dz);
  } else {
    dvx = f(f(f(C4A * f(vx[c] - vx[at(ixm1, j, k)]))
            - f(C4B * f(vx[at(ixp1, j, k)] - vx[at(ixm2, j, k)]))) / dx);
    dvy = f(f(f(C4A * f(vy[c] - vy[at(i, jym1, k)]))
            - f(C4B * f(vy[at(i, jyp1, k)] - vy[at(i, jym2, k)]))) / dy);
    dvz = f(f(f(C4A * f(vz[c] - vz[at(i, j, kzm1)]))
            - f(C4B * f(vz[at(i, j, kzp1)] - vz[at(i, j, kzm2)]))) / dz);
  }
  const lam = r.lamN[c];
  const mu2 = f(2.0 * r.muN[c]);
  const tr = f(f(dvx + dvy) + dvz);
  out6[0] = f(dt * f(f(lam * tr) + f(mu2 * dvx)));
  out6[1] = f(dt * f(f(lam * tr) + f(mu2 * dvy)));
  out6[2] = f(dt * f(f(lam * tr) + f(mu2 * dvz)));

  // ---- sxy at (i+1/2, j+1/2, k) -------------------------------------------
  let dvy_dx: number;
  let dvx_dy: number;
  if (bi) {
    dvy_dx = f(f(vy[at(ixp1, j, k)] - vy[c]) / dx);
    dvx_dy = f(f(vx[at(i, jyp1, k)] - vx[c]) / dy);
  } else {
    dvy_dx = f(f(f(C4A * f(vy[at(ixp1, j, k)] - vy[c]))
               - f(C4B * f(vy[at(ixp2, j, k)] - vy[at(ixm1, j, k)]))) / dx);
    dvx_dy = f(f(f(C4A * f(vx[at(i, jyp1, k)] - vx[c]))
               - f(C4B * f(vx[at(i, jyp2, k)] - vx[at(i, jym1, k)]))) / dy);
  }
  out6[3] = f(f(dt * r.muXy[c]) * f(dvy_dx + dvx_dy));

  // ---- sxz at (i+1/2, j, k+1/2) -------------------------------------------
  let dvz_dx: number;
  let dvx_dz: number;
  if (bh) {
    dvz_dx = f(f(vz[at(ixp1, j, k)] - vz[c]) / dx);
    dvx_dz = f(f(vx[at(i, j, kzp1)] - vx[c]) / dz);
  } else {
    dvz_dx = f(f(f(C4A * f(vz[at(ixp1, j, k)] - vz[c]))
               - f(C4B * f(vz[at(ixp2, j, k)] - vz[at(ixm1, j, k)]))) / dx);
    dvx_dz = f(f(f(C4A * f(vx[at(i, j, kzp1)] - vx[c]))
               - f(C4B * f(vx[at(i, j, kzp2)] - vx[at(i, j, kzm1)]))) / dz);
  }
  out6[4] = f(f(dt * r.muXz[c]) * f(dvz_dx + dvx_dz));

  // ---- syz at (i, j+1/2, k+1/2) -------------------------------------------
  let dvz_dy: number;
  let dvy_dz: number;
  if (bh) {
    dvz_dy = f(f(vz[at(i, jyp1, k)] - vz[c]) / dy);
    dvy_dz = f(f(vy[at(i, j, kzp1)] - vy[c]) / dz);
  } else {
    dvz_dy = f(f(f(C4A * f(vz[at(i, jyp1, k)] - vz[c]))
               - f(C4B * f(vz[at(i, jyp2, k)] - vz[at(i, jym1, k)]))) / dy);
    dvy_dz = f(f(f(C4A * f(vy[at(i, j, kzp1)] - vy[c]))
               - f(C4B * f(vy[at(i, j, kzp2)] - vy[at(i, j, kzm1)]))) / dz);
  }
  out6[5] = f(f(dt * r.muYz[c]) * f(dvz_dy + dvy_dz));
}

/** One instanced velocity draw: additive blend into vx, vy, vz. */
export function runVelocityPass(device: DeviceFieldSet, r: KernelResources): void {
  const { nx, ny, nz } = r.dims;
  const { vx, vy, vz } = device.fields;
  const inc = new Float64Array(3);
  for (let i = 0; i < nx; i += 1) {
    for (let j = 0; j < ny; j += 1) {
      const base = (i * ny + j) * nz;
      for (let k = 0; k < nz; k += 1) {
        velocityFragment(device, r, i, j, k, inc);
        const c = base + k;
        vx[c] = f(vx[c] + inc[0]);
        vy[c] = f(vy[c] + inc[1]);
        vz[c] = f(vz[c] + inc[2]);
      }
    }
  }
}

/** One instanced stress draw: additive blend into the six stresses. */
export function runStressPass(device: DeviceFieldSet, r: KernelResources): void {
  const { nx, ny, nz } = r.dims;
  const { sxx, syy, szz, sxy, sxz, syz } = device.fields;
  const inc = new Float64Array(6);
  for (let i = 0; i < nx; i += 1) {
    for (let j = 0; j < ny; j += 1) {
      const base = (i * ny + j) * nz;
      for (let k = 0; k < nz; k += 1) {
        stressFragment(device, r, i, j, k, inc);
        const c = base + k;
        sxx[c] = f(sxx[c] + inc[0]);
        syy[c] = f(syy[c] + inc[1]);
        szz[c] = f(szz[c] + inc[2]);
        sxy[c] = f(sxy[c] + inc[3]);
        sxz[c] = f(sxz[c] + inc[4]);
        syz[c] = f(syz[c] + inc[5]);
      }
    }
  }
}

/**
 * One damp draw over a field family: multiplicative blend by the
 * sponge weight texture (damp.frag outputs the weight per fragment).
 */
export function runDampPass(device: DeviceFieldSet, r: KernelResources, family: "velocity" | "stress"): void {
  const names =
    family === "velocity" ? (["vx", "vy", "vz"] as const) : (["sxx", "syy", "szz", "sxy", "sxz", "syz"] as const);
  const n = r.weights.length;
  for (const name of names) {
    const arr = device.fields[name];
    for (let c = 0; c < n; c += 1) {
      arr[c] = f(arr[c] * r.weights[c]);
    }
  }
}

/** One (receiver, component) row of the record pass. */
export interface RecordPoint {
  row: number;
  /** Receiver grid position as the f32 vertex attribute holds it. */
  cell: [number, number, number];
  /** 0 = vx, 1 = vy, 2 = vz. */
  comp: 0 | 1 | 2;
}

/** record.frag for one point: staggered trilinear sample, binary32. */
export function recordFragment(device: DeviceFieldSet, r: KernelResources, p: RecordPoint): number {
  const comps = ["vx", "vy", "vz"] as const;
  const field = device.fields[comps[p.comp]];
  const offs = STAGGER_OFFSETS[comps[p.comp]];
  const { nx, ny, nz } = r.dims;
  const px = f(p.cell[0] - offs[0]);
  const py = f(p.cell[1] - offs[1]);
  const pz = f(p.cell[2] - offs[2]);
  const bx = Math.floor(px);
  const by = Math.floor(py);
  const bz = Math.floor(pz);
  const tx = f(px - bx);
  const ty = f(py - by);
  const tz = f(pz - bz);
  const x0 = mirroredIndex(bx, nx);
  const x1 = mirroredIndex(bx + 1, nx);
  const y0 = mirroredIndex(by, ny);
  const y1 = mirroredIndex(by + 1, ny);
  const z0 = mirroredIndex(bz, nz);
  const z1 = mirroredIndex(bz + 1, nz);
  const at = (a: number, b: number, c: number) => field[(a * ny + b) * nz + c];
  const lerp32 = (a: number, b: number, t: number) => f(f(a * f(1.0 - t)) + f(b * t));
  const c00 = lerp32(at(x0, y0, z0), at(x1, y0, z0), tx);
  const c10 = lerp32(at(x0, y1, z0), at(x1, y1, z0), tx);
  const c01 = lerp32(at(x0, y0, z1), at(x1, y0, z1), tx);
  const c11 = lerp32(at(x0, y1, z1), at(x1, y1, z1), tx);
  const c0 = lerp32(c00, c10, ty);
  const c1 = lerp32(c01, c11, ty);
  return lerp32(c0, c1, tz);
}

/** One record draw: writes column `step` of the record buffer. */
export function runRecordPass(
  device: DeviceFieldSet,
  r: KernelResources,
  points: RecordPoint[],
  step: number,
): void {
  if (step < 0 || step >= device.recordCols) {
    throw new Error(`record step ${step} outside the buffer`);
  }
  for (const p of points) {
    device.records[p.row * device.recordCols + step] = recordFragment(device, r, p);
  }
}

/** One point of the source-injection pass. */
export interface InjectPoint {
  /** In-range integer node indices. */
  cell: [number, number, number];
  /** 0 sxx, 1 syy, 2 szz, 3 sxy, 4 sxz, 5 syz. */
  comp: number;
  /** Finished stress increment (binary32 vertex attribute). */
  amount: number;
}

const STRESS_BY_SLOT = ["sxx", "syy", "szz", "sxy", "sxz", "syz"] as const;

/** One inject draw: adds each point's increment to its stress texel. */
export function runInjectPass(device: DeviceFieldSet, points: InjectPoint[]): void {
  for (const p of points) {
    const arr = device.fields[STRESS_BY_SLOT[p.comp]];
    const c = flatIndex(device.dims, p.cell[0], p.cell[1], p.cell[2]);
    arr[c] = f(arr[c] + p.amount);
  }
}
