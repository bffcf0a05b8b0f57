import { GLSL_VERSION, GRID_UNIFORM_BLOCK, GRID_HELPERS } from "./common.js";

/**
 * Fragment stage of the trace-recording pass: trilinear sampling of one
 * velocity component at the receiver position shifted by that
 * component's staggered offset, written into the record texture (no
 * blending).  Corner fetches fold through the mirrored wrap; the lerp
 * chain matches the host reference (x pairs, then y, then z).
 */
export const record_frag = `${GLSL_VERSION}
${GRID_UNIFORM_BLOCK}
uniform sampler2D uVx;
uniform sampler2D uVy;
uniform sampler2D uVz;

flat in vec3 vCell;
flat in int vComp;

layout(location = 0) out float oSample;
${GRID_HELPERS}
float fetchComp(ivec3 cell) {
    if (vComp == 0) return fetchField(uVx, cell);
    if (vComp == 1) return fetchField(uVy, cell);
    return fetchField(uVz, cell);
}

float lerp1(float a, float b, float t) {
    return a * (1.0 - t) + b * t;
}

void main() {
    vec3 offs = (vComp == 0) ? vec3(0.5, 0.0, 0.0)
              : (vComp == 1) ? vec3(0.0, 0.5, 0.0)
                             : vec3(0.0, 0.0, 0.5);
    vec3 pos = vCell - offs;
    vec3 base = floor(pos);
    vec3 t = pos - base;
    ivec3 c0 = ivec3(base);
    float c00 = lerp1(fetchComp(c0 + ivec3(0, 0, 0)), fetchComp(c0 + ivec3(1, 0, 0)), t.x);
    float c10 = lerp1(fetchComp(c0 + ivec3(0, 1, 0)), fetchComp(c0 + ivec3(1, 1, 0)), t.x);
    float c01 = lerp1(fetchComp(c0 + ivec3(0, 0, 1)), fetchComp(c0 + ivec3(1, 0, 1)), t.x);
    float c11 = lerp1(fetchComp(c0 + ivec3(0, 1, 1)), fetchComp(c0 + ivec3(1, 1, 1)), t.x);
    float c0y = lerp1(c00, c10, t.y);
    float c1y = lerp1(c01, c11, t.y);
    oSample = lerp1(c0y, c1y, t.z);
}
`;
