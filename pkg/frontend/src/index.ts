/** Public surface of the GL kernel package. */

export * from "./types.js";
export * from "./npy.js";
export * from "./samplers.js";
export * from "./device.js";
export * from "./emulator.js";
export * from "./source.js";
export * from "./pipeline.js";
export * from "./compare.js";
export * from "./shaders/index.js";
export { GLSL_VERSION, GRID_UNIFORM_BLOCK, GRID_HELPERS } from "./shaders/common.js";
