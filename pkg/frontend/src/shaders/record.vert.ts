import { GLSL_VERSION, GRID_UNIFORM_BLOCK } from "./common.js";

/**
 * Vertex stage of the trace-recording pass.
 *
 * One GL_POINTS vertex per (receiver, component) row.  The point lands
 * on pixel (uStep, row) of the 2D record texture (rows = receiver-major
 * receiver/component pairs ordered vx, vy, vz; columns = time steps), so
 * each step writes exactly one column and touches nothing else.  The
 * receiver's fractional grid position and the component selector pass
 * through to the fragment stage.
 */
export const record_vert = `${GLSL_VERSION}
${GRID_UNIFORM_BLOCK}
layout(location = 0) in float aRow;
layout(location = 1) in vec3 aCell;   // receiver position, fractional cells
layout(location = 2) in float aComp;  // 0 = vx, 1 = vy, 2 = vz

uniform int uStep;
uniform ivec2 uRecordDims;  // rows, columns (= n_steps)

flat out vec3 vCell;
flat out int vComp;

void main() {
    vCell = aCell;
    vComp = int(aComp);
    vec2 px = vec2(float(uStep) + 0.5, aRow + 0.5);
    gl_Position = vec4(2.0 * px / vec2(uRecordDims.yx) - 1.0, 0.0, 1.0);
    gl_PointSize = 1.0;
}
`;
