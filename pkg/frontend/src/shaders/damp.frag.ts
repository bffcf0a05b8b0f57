import { GLSL_VERSION, GRID_UNIFORM_BLOCK, GRID_HELPERS } from "./common.js";

/**
 * Absorbing-sponge pass: every output is the per-cell damping weight.
 * Render with multiplicative blending (glBlendFunc(GL_ZERO, GL_SRC_COLOR))
 * over the attachments of the family just updated — the three velocity
 * atlases after the velocity pass, the six stress atlases after the
 * stress pass — so each field becomes field * weight.  With the additive
 * pass before it this reproduces the reference update
 * (field + dt * increment) * weight as two feedback-free passes.
 *
 * The weight texture is precomputed on the host (see
 * buildSpongeWeights) and uploaded once: 1 in the interior, falling as
 * exp(-(strength * (width - d))^2) within `width` cells of an enabled
 * face, with contributions of several faces multiplied.
 */
export const damp_frag = `${GLSL_VERSION}
${GRID_UNIFORM_BLOCK}
uniform sampler2D uWeights;

flat in int vSlice;

layout(location = 0) out float w0;
layout(location = 1) out float w1;
layout(location = 2) out float w2;
layout(location = 3) out float w3;
layout(location = 4) out float w4;
layout(location = 5) out float w5;
${GRID_HELPERS}
void main() {
    float w = fetchField(uWeights, fragmentCell(vSlice));
    w0 = w;
    w1 = w;
    w2 = w;
    w3 = w;
    w4 = w;
    w5 = w;
}
`;
