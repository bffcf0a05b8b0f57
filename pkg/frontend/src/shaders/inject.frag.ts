import { GLSL_VERSION } from "./common.js";

/**
 * Fragment stage of the source-injection pass: routes the point's
 * increment to the attachment of its stress component; the other five
 * outputs add zero.  Additive blending (GL_ONE, GL_ONE) performs the
 * accumulation.
 */
export const inject_frag = `${GLSL_VERSION}
flat in int vComp;
flat in float vAmount;

layout(location = 0) out float dSxx;
layout(location = 1) out float dSyy;
layout(location = 2) out float dSzz;
layout(location = 3) out float dSxy;
layout(location = 4) out float dSxz;
layout(location = 5) out float dSyz;

void main() {
    dSxx = (vComp == 0) ? vAmount : 0.0;
    dSyy = (vComp == 1) ? vAmount : 0.0;
    dSzz = (vComp == 2) ? vAmount : 0.0;
    dSxy = (vComp == 3) ? vAmount : 0.0;
    dSxz = (vComp == 4) ? vAmount : 0.0;
    dSyz = (vComp == 5) ? vAmount : 0.0;
}
`;
