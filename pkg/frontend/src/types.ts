/** Shared shapes for the GL kernel pipeline and its CPU reference executor. */

export interface GridDims {
  nx: number;
  ny: number;
  nz: number;
}

export const FIELD_NAMES = [
  "vx",
  "vy",
  "vz",
  "sxx",
  "syy",
  "szz",
  "sxy",
  "sxz",
  "syz",
] as const;

export type FieldName = (typeof FIELD_NAMES)[number];

export const VELOCITY_NAMES = ["vx", "vy", "vz"] as const;
export const STRESS_NAMES = ["sxx", "syy", "szz", "sxy", "sxz", "syz"] as const;

export type VelocityName = (typeof VELOCITY_NAMES)[number];
export type StressName = (typeof STRESS_NAMES)[number];

/** Half-cell lattice shift of each staggered component, in cells. */
export const STAGGER_OFFSETS: Record<FieldName, readonly [number, number, number]> = {
  vx: [0.5, 0.0, 0.0],
  vy: [0.0, 0.5, 0.0],
  vz: [0.0, 0.0, 0.5],
  sxx: [0.0, 0.0, 0.0],
  syy: [0.0, 0.0, 0.0],
  szz: [0.0, 0.0, 0.0],
  sxy: [0.5, 0.5, 0.0],
  sxz: [0.5, 0.0, 0.5],
  syz: [0.0, 0.5, 0.5],
};

/** Densities strictly below this read as vacuum (kg/m3). */
export const VACUUM_DENSITY_THRESHOLD = 10.0;

export interface SpongeConfig {
  width: number;
  strength: number;
  x_min: boolean;
  x_max: boolean;
  y_min: boolean;
  y_max: boolean;
  z_min: boolean;
  z_max: boolean;
}

export const SPONGE_DISABLED: SpongeConfig = {
  width: 0,
  strength: 0.0,
  x_min: false,
  x_max: false,
  y_min: false,
  y_max: false,
  z_min: false,
  z_max: false,
};

export function cellCount(dims: GridDims): number {
  return dims.nx * dims.ny * dims.nz;
}

/** Row-major (C-order) flat index, matching the fixture array layout. */
export function flatIndex(dims: GridDims, i: number, j: number, k: number): number {
  return (i * dims.ny + j) * dims.nz + k;
}
