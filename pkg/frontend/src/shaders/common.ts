/**
 * Shared GLSL 3.30 chunks: the `Grid` uniform block, slice-atlas
 * addressing, mirrored index folding, staggered field fetches and
 * parameter sampling.
 *
 * Volume storage convention
 * -------------------------
 * Each 3D field (nx, ny, nz) lives in one R32F 2D texture laid out as a
 * grid of z-slice tiles: slice k occupies the nx-by-ny pixel rectangle
 * whose tile coordinates are (k % atlasCols, k / atlasCols).  One
 * instanced draw with gl_InstanceID = k per slice covers the whole
 * volume in a single call; blending accumulates (additive passes) or
 * scales (the damp pass) in place.  No pass samples the textures it
 * renders into: velocity passes read stresses, stress passes read
 * velocities, so in-place blending is free of feedback loops.
 *
 * The three medium parameter volumes (rho, lambda, mu) are true 3D
 * textures, usually coarser than the simulation grid, sampled with
 * native trilinear filtering and MIRRORED_REPEAT wrap on all axes.
 */

/** GLSL version prelude every kernel starts with. */
export const GLSL_VERSION = "#version 330 core";

/**
 * The `Grid` std140 uniform block, bound once per run.
 *
 * std140 layout (total 64 bytes):
 *   offset  0  vec4  spacing    = (dx, dy, dz, dt)   [metres, seconds]
 *   offset 16  ivec4 dims       = (nx, ny, nz, atlasCols)
 *   offset 32  ivec4 paramDims  = (npx, npy, npz, hasSurface 0/1)
 *   offset 48  vec4  surface    = (surfaceK, 0, 0, 0); surfaceK = surface_z / dz
 */
export const GRID_UNIFORM_BLOCK = `
layout(std140) uniform Grid {
    vec4  spacing;    // dx, dy, dz, dt
    ivec4 dims;       // nx, ny, nz, atlasCols
    ivec4 paramDims;  // npx, npy, npz, hasSurface
    vec4  surface;    // surface_z / dz in x, rest unused
};
`;

/** Helper functions shared by the kernels (requires GRID_UNIFORM_BLOCK). */
export const GRID_HELPERS = `
// Fold index i into [0, n) by mirror repetition (period 2n); reads just
// past either end reflect back inside (-1 -> 0, n -> n-1).
int mirrorIndex(int i, int n) {
    int m = i % (2 * n);
    if (m < 0) m += 2 * n;
    return (m >= n) ? (2 * n - 1 - m) : m;
}

// Atlas pixel of volume cell (i, j, k); indices must already be in range.
ivec2 atlasPixel(ivec3 cell) {
    ivec2 tile = ivec2(cell.z % dims.w, cell.z / dims.w);
    return ivec2(tile.x * dims.x + cell.x, tile.y * dims.y + cell.y);
}

// Nearest-texel field read with mirrored wrap on every axis.
float fetchField(sampler2D atlas, ivec3 cell) {
    ivec3 c = ivec3(mirrorIndex(cell.x, dims.x),
                    mirrorIndex(cell.y, dims.y),
                    mirrorIndex(cell.z, dims.z));
    return texelFetch(atlas, atlasPixel(c), 0).r;
}

// Volume cell this fragment updates: (i, j) from the position inside the
// tile, k from the instance index forwarded by the vertex stage.
ivec3 fragmentCell(int slice) {
    int i = int(gl_FragCoord.x) % dims.x;
    int j = int(gl_FragCoord.y) % dims.y;
    return ivec3(i, j, slice);
}

// Medium parameter at a simulation-grid position shifted by a staggered
// component offset.  Both grids cover one physical box, so coordinates
// rescale by the resolution ratio; the sampler's trilinear filter and
// MIRRORED_REPEAT wrap complete the interpolation.  Sample positions are
// fixed per cell, so drivers with reduced subtexel precision can instead
// pre-filter these values once on the host (see README).
float sampleParam(sampler3D tex, ivec3 cell, vec3 stagger) {
    vec3 scale = vec3(paramDims.xyz) / vec3(dims.xyz);
    vec3 p = (vec3(cell) + stagger) * scale;
    vec3 st = (p + 0.5) / vec3(paramDims.xyz);
    return texture(tex, st).r;
}

// Rows of reduced-order stencils around the free surface.  A 4th-order
// z footprint would straddle the surface within 2 cells of it; those
// rows drop to the 2nd-order stencil.  bandI covers integer-offset
// components, bandH half-offset ones.  No surface, no bands.
bool bandI(int k) {
    return paramDims.w != 0 && abs(float(k) - surface.x) < 2.0;
}
bool bandH(int k) {
    return paramDims.w != 0 && abs(float(k) + 0.5 - surface.x) < 2.0;
}
`;

/** 4th-order staggered-difference tap weights. */
export const TAP_WEIGHTS = `
const float C4A = 9.0 / 8.0;
const float C4B = 1.0 / 24.0;
`;
