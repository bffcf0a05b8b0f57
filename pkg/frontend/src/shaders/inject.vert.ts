import { GLSL_VERSION, GRID_UNIFORM_BLOCK } from "./common.js";

/**
 * Vertex stage of the source-injection pass.
 *
 * The moment-tensor source spreads each tensor entry over the 8 nodes
 * of its stress component's staggered lattice around the source
 * position; the host precomputes, per step, one point per (node,
 * component) with the signed increment already scaled by the source
 * wavelet, dt / cell volume and the trilinear node weight.  Points land
 * on the node's atlas pixel and the fragment adds the increment to the
 * matching stress attachment under additive blending
 * (glBlendFunc(GL_ONE, GL_ONE)).
 */
export const inject_vert = `${GLSL_VERSION}
${GRID_UNIFORM_BLOCK}
layout(location = 0) in vec3 aCell;    // integer node indices
layout(location = 1) in float aComp;   // 0 sxx, 1 syy, 2 szz, 3 sxy, 4 sxz, 5 syz
layout(location = 2) in float aAmount; // finished stress increment

flat out int vComp;
flat out float vAmount;

void main() {
    vComp = int(aComp);
    vAmount = aAmount;
    ivec3 cell = ivec3(aCell);
    ivec2 tile = ivec2(cell.z % dims.w, cell.z / dims.w);
    vec2 px = vec2(tile * ivec2(dims.x, dims.y) + cell.xy) + 0.5;
    int tileRows = (dims.z + dims.w - 1) / dims.w;
    vec2 atlasPx = vec2(float(dims.w * dims.x), float(tileRows * dims.y));
    gl_Position = vec4(2.0 * px / atlasPx - 1.0, 0.0, 1.0);
    gl_PointSize = 1.0;
}
`;
