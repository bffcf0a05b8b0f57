import { GLSL_VERSION, GRID_UNIFORM_BLOCK, GRID_HELPERS, TAP_WEIGHTS } from "./common.js";

/**
 * Velocity kernel: emits the per-step increments of (vx, vy, vz) from
 * the stress divergence.  Render with additive blending
 * (glBlendFunc(GL_ONE, GL_ONE)) into the three velocity atlases; the
 * multiplicative damp pass follows.  Reads only stress textures and the
 * density, never its own render targets.
 *
 * Staggering: vx sits at (i+1/2, j, k), vy at (i, j+1/2, k), vz at
 * (i, j, k+1/2).  Differences are one-sided accordingly: e.g. d(sxx)/dx
 * for vx is forward in x, d(sxy)/dy backward in y.  Rows near the free
 * surface (bandI / bandH) use the 2nd-order stencil; elsewhere the
 * 4th-order taps (C4A, C4B) apply.  Cells whose staggered density reads
 * as vacuum (rho < 10) get a zero increment, which keeps their velocity
 * pinned at zero because fields start the run cleared.
 */
export const velocity_frag = `${GLSL_VERSION}
${GRID_UNIFORM_BLOCK}
uniform sampler2D uSxx;
uniform sampler2D uSyy;
uniform sampler2D uSzz;
uniform sampler2D uSxy;
uniform sampler2D uSxz;
uniform sampler2D uSyz;
uniform sampler3D uRho;

flat in int vSlice;

layout(location = 0) out float dVx;
layout(location = 1) out float dVy;
layout(location = 2) out float dVz;
${TAP_WEIGHTS}${GRID_HELPERS}
void main() {
    ivec3 c = fragmentCell(vSlice);
    int i = c.x;
    int j = c.y;
    int k = c.z;
    float dx = spacing.x;
    float dy = spacing.y;
    float dz = spacing.z;
    float dt = spacing.w;
    bool bi = bandI(k);
    bool bh = bandH(k);

    // ---- vx at (i+1/2, j, k) -------------------------------------------
    float rho_vx = sampleParam(uRho, c, vec3(0.5, 0.0, 0.0));
    if (rho_vx < 10.0) {
        dVx = 0.0;
    } else {
        float d_sxx, d_sxy, d_sxz;
        if (bi) {
            d_sxx = (fetchField(uSxx, ivec3(i + 1, j, k)) - fetchField(uSxx, c)) / dx;
            d_sxy = (fetchField(uSxy, c) - fetchField(uSxy, ivec3(i, j - 1, k))) / dy;
            d_sxz = (fetchField(uSxz, c) - fetchField(uSxz, ivec3(i, j, k - 1))) / dz;
        } else {
            d_sxx = (C4A * (fetchField(uSxx, ivec3(i + 1, j, k)) - fetchField(uSxx, c))
                     - C4B * (fetchField(uSxx, ivec3(i + 2, j, k)) - fetchField(uSxx, ivec3(i - 1, j, k)))) / dx;
            d_sxy = (C4A * (fetchField(uSxy, c) - fetchField(uSxy, ivec3(i, j - 1, k)))
                     - C4B * (fetchField(uSxy, ivec3(i, j + 1, k)) - fetchField(uSxy, ivec3(i, j - 2, k)))) / dy;
            d_sxz = (C4A * (fetchField(uSxz, c) - fetchField(uSxz, ivec3(i, j, k - 1)))
                     - C4B * (fetchField(uSxz, ivec3(i, j, k + 1)) - fetchField(uSxz, ivec3(i, j, k - 2)))) / dz;
        }
        dVx = dt / rho_vx * (d_sxx + d_sxy + d_sxz);
    }

    // ---- vy at (i, j+1/2, k) -------------------------------------------
    float rho_vy = sampleParam(uRho, c, vec3(0.0, 0.5, 0.0));
    if (rho_vy < 10.0) {
        dVy = 0.0;
    } else {
        float d_sxy, d_syy, d_syz;
        if (bi) {
            d_sxy = (fetchField(uSxy, c) - fetchField(uSxy, ivec3(i - 1, j, k))) / dx;
            d_syy = (fetchField(uSyy, ivec3(i, j + 1, k)) - fetchField(uSyy, c)) / dy;
            d_syz = (fetchField(uSyz, c) - fetchField(uSyz, ivec3(i, j, k - 1))) / dz;
        } else {
            d_sxy = (C4A * (fetchField(uSxy, c) - fetchField(uSxy, ivec3(i - 1, j, k)))
                     - C4B * (fetchField(uSxy, ivec3(i + 1, j, k)) - fetchField(uSxy, ivec3(i - 2, j, k)))) / dx;
            d_syy = (C4A * (fetchField(uSyy, ivec3(i, j + 1, k)) - fetchField(uSyy, c))
                     - C4B * (fetchField(uSyy, ivec3(i, j + 2, k)) - fetchField(uSyy, ivec3(i, j - 1, k)))) / dy;
            d_syz = (C4A * (fetchField(uSyz, c) - fetchField(uSyz, ivec3(i, j, k - 1)))
                     - C4B * (fetchField(uSyz, ivec3(i, j, k + 1)) - fetchField(uSyz, ivec3(i, j, k - 2)))) / dz;
        }
        dVy = dt / rho_vy * (d_sxy + d_syy + d_syz);
    }

    // ---- vz at (i, j, k+1/2) -------------------------------------------
    float rho_vz = sampleParam(uRho, c, vec3(0.0, 0.0, 0.5));
    if (rho_vz < 10.0) {
        dVz = 0.0;
    } else {
        float d_sxz, d_syz, d_szz;
        if (bh) {
            d_sxz = (fetchField(uSxz, c) - fetchField(uSxz, ivec3(i - 1, j, k))) / dx;
            d_syz = (fetchField(uSyz, c) - fetchField(uSyz, ivec3(i, j - 1, k))) / dy;
            d_szz = (fetchField(uSzz, ivec3(i, j, k + 1)) - fetchField(uSzz, c)) / dz;
        } else {
            d_sxz = (C4A * (fetchField(uSxz, c) - fetchField(uSxz, ivec3(i - 1, j, k)))
                     - C4B * (fetchField(uSxz, ivec3(i + 1, j, k)) - fetchField(uSxz, ivec3(i - 2, j, k)))) / dx;
            d_syz = (C4A * (fetchField(uSyz, c) - fetchField(uSyz, ivec3(i, j - 1, k)))
                     - C4B * (fetchField(uSyz, ivec3(i, j + 1, k)) - fetchField(uSyz, ivec3(i, j - 2, k)))) / dy;
            d_szz = (C4A * (fetchField(uSzz, ivec3(i, j, k + 1)) - fetchField(uSzz, c))
                     - C4B * (fetchField(uSzz, ivec3(i, j, k + 2)) - fetchField(uSzz, ivec3(i, j, k - 1)))) / dz;
        }
        dVz = dt / rho_vz * (d_sxz + d_syz + d_szz);
    }
}
`;
