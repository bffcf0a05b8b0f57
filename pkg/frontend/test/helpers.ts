/** Fixture loading shared by the test suites. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { DeviceFieldSet } from "../src/device.js";
import { KernelResources, makeKernelResources } from "../src/emulator.js";
import { readNpy, readNpyF32, readNpyF64 } from "../src/npy.js";
import { FIELD_NAMES, GridDims, SpongeConfig } from "../src/types.js";

export const DATA_DIR = join(dirname(fileURLToPath(import.meta.url)), "..", "fixtures", "data");

export function fixturePath(name: string): string {
  return join(DATA_DIR, `${name}.npy`);
}

export function loadMeta<T = any>(name: string): T {
  return JSON.parse(readFileSync(join(DATA_DIR, `${name}.json`), "utf8"));
}

export function loadF32(name: string): Float32Array {
  return readNpyF32(fixturePath(name)).data;
}

export function loadF64(name: string): Float64Array {
  return readNpyF64(fixturePath(name)).data;
}

export function loadU8(name: string): Uint8Array {
  const arr = readNpy(fixturePath(name));
  if (!(arr.data instanceof Uint8Array)) {
    throw new Error(`${name}: expected uint8 payload`);
  }
  return arr.data;
}

export interface KernelFixtureMeta {
  dims: [number, number, number];
  param_dims: [number, number, number];
  dx: number;
  dy: number;
  dz: number;
  dt: number;
  n_steps: number;
  surface_z: number;
  sponge: SpongeConfig;
  seed: number;
}

export interface KernelFixture {
  meta: KernelFixtureMeta;
  dims: GridDims;
  device: DeviceFieldSet;
  resources: KernelResources;
  expected: Record<string, Float32Array>;
}

/** Build a device preloaded with a kernel-parity fixture's inputs. */
export function loadKernelFixture(name: string): KernelFixture {
  const meta = loadMeta<KernelFixtureMeta>(name);
  const dims: GridDims = { nx: meta.dims[0], ny: meta.dims[1], nz: meta.dims[2] };
  const paramDims: GridDims = {
    nx: meta.param_dims[0],
    ny: meta.param_dims[1],
    nz: meta.param_dims[2],
  };
  const device = new DeviceFieldSet(dims, paramDims, 1, 1);
  device.uploadParams(loadF32(`${name}_rho`), loadF32(`${name}_lam`), loadF32(`${name}_mu`));
  for (const field of FIELD_NAMES) {
    device.uploadField(field, loadF32(`${name}_in_${field}`));
  }
  const resources = makeKernelResources(device, {
    dt: meta.dt,
    dx: meta.dx,
    dy: meta.dy,
    dz: meta.dz,
    surfaceZ: meta.surface_z,
    sponge: meta.sponge,
  });
  const expected: Record<string, Float32Array> = {};
  for (const field of FIELD_NAMES) {
    expected[field] = loadF32(`${name}_out_${field}`);
  }
  return { meta, dims, device, resources, expected };
}

/** Constant-medium device for synthetic kernel tests (no fixtures). */
export function uniformDevice(
  dims: GridDims,
  opts: { rho?: number; vp?: number; vs?: number } = {},
): DeviceFieldSet {
  const rho = opts.rho ?? 2700.0;
  const vp = opts.vp ?? 6000.0;
  const vs = opts.vs ?? 3464.0;
  const mu = rho * vs * vs;
  const lam = rho * vp * vp - 2.0 * mu;
  const paramDims: GridDims = { nx: 2, ny: 2, nz: 2 };
  const device = new DeviceFieldSet(dims, paramDims, 1, 1);
  device.uploadParams(
    new Float32Array(8).fill(rho),
    new Float32Array(8).fill(lam),
    new Float32Array(8).fill(mu),
  );
  return device;
}
