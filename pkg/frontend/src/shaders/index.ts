/**
 * Kernel catalogue: GLSL 3.30 sources plus the pass plumbing each one
 * expects (render targets, blend function, samplers, uniforms).  The
 * executor in ../emulator.ts follows these descriptors; a test keeps
 * the descriptor lists and the shader text in sync.
 */

import { slice_vert } from "./slice.vert.js";
import { velocity_frag } from "./velocity.frag.js";
import { stress_frag } from "./stress.frag.js";
import { damp_frag } from "./damp.frag.js";
import { record_vert } from "./record.vert.js";
import { record_frag } from "./record.frag.js";
import { inject_vert } from "./inject.vert.js";
import { inject_frag } from "./inject.frag.js";

export {
  slice_vert,
  velocity_frag,
  stress_frag,
  damp_frag,
  record_vert,
  record_frag,
  inject_vert,
  inject_frag,
};

export type BlendMode = "add" | "multiply" | "replace";

export interface PassDescriptor {
  name: string;
  vertex: string;
  fragment: string;
  /** Color attachments, in layout(location) order. */
  targets: string[];
  /** Number of fragment outputs declared (= attachment slots used). */
  outputs: number;
  /**
   * add      -> glBlendFunc(GL_ONE, GL_ONE): target += output
   * multiply -> glBlendFunc(GL_ZERO, GL_SRC_COLOR): target *= output
   * replace  -> blending off
   */
  blend: BlendMode;
  /** sampler2D / sampler3D uniforms, by GLSL name. */
  samplers: string[];
  /** Non-sampler uniforms outside the Grid block, by GLSL name. */
  uniforms: string[];
  /** Whether either stage declares the Grid uniform block. */
  usesGridBlock: boolean;
}

export const VELOCITY_PASS: PassDescriptor = {
  name: "velocity",
  vertex: slice_vert,
  fragment: velocity_frag,
  targets: ["vx", "vy", "vz"],
  outputs: 3,
  blend: "add",
  samplers: ["uSxx", "uSyy", "uSzz", "uSxy", "uSxz", "uSyz", "uRho"],
  uniforms: [],
  usesGridBlock: true,
};

export const STRESS_PASS: PassDescriptor = {
  name: "stress",
  vertex: slice_vert,
  fragment: stress_frag,
  targets: ["sxx", "syy", "szz", "sxy", "sxz", "syz"],
  outputs: 6,
  blend: "add",
  samplers: ["uVx", "uVy", "uVz", "uLam", "uMu"],
  uniforms: [],
  usesGridBlock: true,
};

export const DAMP_PASS: PassDescriptor = {
  name: "damp",
  vertex: slice_vert,
  fragment: damp_frag,
  // bound to whichever field family was just updated; six attachment
  // slots cover the stress case, the velocity case uses the first three
  targets: ["<family>"],
  outputs: 6,
  blend: "multiply",
  samplers: ["uWeights"],
  uniforms: [],
  usesGridBlock: true,
};

export const RECORD_PASS: PassDescriptor = {
  name: "record",
  vertex: record_vert,
  fragment: record_frag,
  targets: ["records"],
  outputs: 1,
  blend: "replace",
  samplers: ["uVx", "uVy", "uVz"],
  uniforms: ["uStep", "uRecordDims"],
  usesGridBlock: true,
};

export const INJECT_PASS: PassDescriptor = {
  name: "inject",
  vertex: inject_vert,
  fragment: inject_frag,
  targets: ["sxx", "syy", "szz", "sxy", "sxz", "syz"],
  outputs: 6,
  blend: "add",
  samplers: [],
  uniforms: [],
  usesGridBlock: true,
};

export const ALL_PASSES = [VELOCITY_PASS, STRESS_PASS, DAMP_PASS, RECORD_PASS, INJECT_PASS];

/** Members of the shared std140 uniform block, in declaration order. */
export const GRID_BLOCK_MEMBERS = ["spacing", "dims", "paramDims", "surface"] as const;
