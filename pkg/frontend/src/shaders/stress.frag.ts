import { GLSL_VERSION, GRID_UNIFORM_BLOCK, GRID_HELPERS, TAP_WEIGHTS } from "./common.js";

/**
 * Stress kernel: emits the per-step increments of the six stress
 * components from the velocity gradients and the Lame parameters.
 * Render with additive blending (glBlendFunc(GL_ONE, GL_ONE)) into the
 * six stress atlases; the multiplicative damp pass follows.  Reads only
 * velocity textures plus lambda and mu, never its own render targets.
 *
 * Normal stresses live at cell corners (i, j, k), sxy at
 * (i+1/2, j+1/2, k), sxz at (i+1/2, j, k+1/2), syz at (i, j+1/2, k+1/2);
 * one-sided differences follow the staggering.  Rows near the free
 * surface (bandI / bandH) use the 2nd-order stencil.  Above the surface
 * lambda and mu sample to zero, which zeroes the increments there.
 */
export const stress_frag = `${GLSL_VERSION}
${GRID_UNIFORM_BLOCK}
uniform sampler2D uVx;
uniform sampler2D uVy;
uniform sampler2D uVz;
uniform sampler3D uLam;
uniform sampler3D uMu;

flat in int vSlice;

layout(location = 0) out float dSxx;
layout(location = 1) out float dSyy;
layout(location = 2) out float dSzz;
layout(location = 3) out float dSxy;
layout(location = 4) out float dSxz;
layout(location = 5) out float dSyz;
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

    // ---- normal stresses at (i, j, k) ------------------------------------
    float dvx, dvy, dvz;
    if (bi) {
        dvx = (fetchField(uVx, c) - fetchField(uVx, ivec3(i - 1, j, k))) / dx;
        dvy = (fetchField(uVy, c) - fetchField(uVy, ivec3(i, j - 1, k))) / dy;
        dvz = (fetchField(uVz, c) - fetchField(uVz, ivec3(i, j, k - 1))) / dz;
    } else {
        dvx = (C4A * (fetchField(uVx, c) - fetchField(uVx, ivec3(i - 1, j, k)))
               - C4B * (fetchField(uVx, ivec3(i + 1, j, k)) - fetchField(uVx, ivec3(i - 2, j, k)))) / dx;
        dvy = (C4A * (fetchField(uVy, c) - fetchField(uVy, ivec3(i, j - 1, k)))
               - C4B * (fetchField(uVy, ivec3(i, j + 1, k)) - fetchField(uVy, ivec3(i, j - 2, k)))) / dy;
        dvz = (C4A * (fetchField(uVz, c) - fetchField(uVz, ivec3(i, j, k - 1)))
               - C4B * (fetchField(uVz, ivec3(i, j, k + 1)) - fetchField(uVz, ivec3(i, j, k - 2)))) / dz;
    }
    float lam = sampleParam(uLam, c, vec3(0.0, 0.0, 0.0));
    float mu2 = 2.0 * sampleParam(uMu, c, vec3(0.0, 0.0, 0.0));
    float tr = dvx + dvy + dvz;
    dSxx = dt * (lam * tr + mu2 * dvx);
    dSyy = dt * (lam * tr + mu2 * dvy);
    dSzz = dt * (lam * tr + mu2 * dvz);

    // ---- sxy at (i+1/2, j+1/2, k) ----------------------------------------
    float dvy_dx, dvx_dy;
    if (bi) {
        dvy_dx = (fetchField(uVy, ivec3(i + 1, j, k)) - fetchField(uVy, c)) / dx;
        dvx_dy = (fetchField(uVx, ivec3(i, j + 1, k)) - fetchField(uVx, c)) / dy;
    } else {
        dvy_dx = (C4A * (fetchField(uVy, ivec3(i + 1, j, k)) - fetchField(uVy, c))
                  - C4B * (fetchField(uVy, ivec3(i + 2, j, k)) - fetchField(uVy, ivec3(i - 1, j, k)))) / dx;
        dvx_dy = (C4A * (fetchField(uVx, ivec3(i, j + 1, k)) - fetchField(uVx, c))
                  - C4B * (fetchField(uVx, ivec3(i, j + 2, k)) - fetchField(uVx, ivec3(i, j - 1, k)))) / dy;
    }
    dSxy = dt * sampleParam(uMu, c, vec3(0.5, 0.5, 0.0)) * (dvy_dx + dvx_dy);

    // ---- sxz at (i+1/2, j, k+1/2) ----------------------------------------
    float dvz_dx, dvx_dz;
    if (bh) {
        dvz_dx = (fetchField(uVz, ivec3(i + 1, j, k)) - fetchField(uVz, c)) / dx;
        dvx_dz = (fetchField(uVx, ivec3(i, j, k + 1)) - fetchField(uVx, c)) / dz;
    } else {
        dvz_dx = (C4A * (fetchField(uVz, ivec3(i + 1, j, k)) - fetchField(uVz, c))
                  - C4B * (fetchField(uVz, ivec3(i + 2, j, k)) - fetchField(uVz, ivec3(i - 1, j, k)))) / dx;
        dvx_dz = (C4A * (fetchField(uVx, ivec3(i, j, k + 1)) - fetchField(uVx, c))
                  - C4B * (fetchField(uVx, ivec3(i, j, k + 2)) - fetchField(uVx, ivec3(i, j, k - 1)))) / dz;
    }
    dSxz = dt * sampleParam(uMu, c, vec3(0.5, 0.0, 0.5)) * (dvz_dx + dvx_dz);

    // ---- syz at (i, j+1/2, k+1/2) ----------------------------------------
    float dvz_dy, dvy_dz;
    if (bh) {
        dvz_dy = (fetchField(uVz, ivec3(i, j + 1, k)) - fetchField(uVz, c)) / dy;
        dvy_dz = (fetchField(uVy, ivec3(i, j, k + 1)) - fetchField(uVy, c)) / dz;
    } else {
        dvz_dy = (C4A * (fetchField(uVz, ivec3(i, j + 1, k)) - fetchField(uVz, c))
                  - C4B * (fetchField(uVz, ivec3(i, j + 2, k)) - fetchField(uVz, ivec3(i, j - 1, k)))) / dy;
        dvy_dz = (C4A * (fetchField(uVy, ivec3(i, j, k + 1)) - fetchField(uVy, c))
                  - C4B * (fetchField(uVy, ivec3(i, j, k + 2)) - fetchField(uVy, ivec3(i, j, k - 1)))) / dz;
    }
    dSyz = dt * sampleParam(uMu, c, vec3(0.0, 0.5, 0.5)) * (dvz_dy + dvy_dz);
}
`;
