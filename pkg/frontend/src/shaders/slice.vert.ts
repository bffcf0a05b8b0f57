import { GLSL_VERSION, GRID_UNIFORM_BLOCK } from "./common.js";

/**
 * Vertex stage for all full-volume passes (velocity, stress, damp).
 *
 * Draw with glDrawArraysInstanced(GL_TRIANGLE_STRIP, 0, 4, nz): each
 * instance is one z slice, positioned over its tile of the slice atlas,
 * so a single call updates the whole volume.  `corner` is the unit quad
 * (0,0) (1,0) (0,1) (1,1).
 */
export const slice_vert = `${GLSL_VERSION}
${GRID_UNIFORM_BLOCK}
layout(location = 0) in vec2 corner;

flat out int vSlice;

void main() {
    int k = gl_InstanceID;
    vSlice = k;
    ivec2 tile = ivec2(k % dims.w, k / dims.w);
    int tileRows = (dims.z + dims.w - 1) / dims.w;
    vec2 atlasPx = vec2(float(dims.w * dims.x), float(tileRows * dims.y));
    vec2 originPx = vec2(tile) * vec2(float(dims.x), float(dims.y));
    vec2 px = originPx + corner * vec2(float(dims.x), float(dims.y));
    gl_Position = vec4(2.0 * px / atlasPx - 1.0, 0.0, 1.0);
}
`;
