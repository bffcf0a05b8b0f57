/**
 * Minimal reader for the NumPy `.npy` binary array format (versions 1.0
 * and 2.0, C-order, little-endian scalar dtypes). Fixture arrays produced
 * by the wavesim package are exchanged in this format.
 */

import { readFileSync } from "node:fs";

export type NpyData = Float32Array | Float64Array | Uint8Array | Int64Array;

/** BigInt64Array narrowed to the integer range we actually use. */
export type Int64Array = Int32Array;

export interface NpyArray {
  /** Row-major (C-order) element buffer. */
  data: Float32Array | Float64Array | Uint8Array | Int32Array;
  /** Dimensions, outermost first. */
  shape: number[];
}

const MAGIC = [0x93, 0x4e, 0x55, 0x4d, 0x50, 0x59]; // \x93NUMPY

/** Parse the python-literal header dict without evaluating python. */
function parseHeader(text: string): { descr: string; fortran: boolean; shape: number[] } {
  const descrMatch = text.match(/'descr'\s*:\s*'([^']+)'/);
  const fortranMatch = text.match(/'fortran_order'\s*:\s*(True|False)/);
  const shapeMatch = text.match(/'shape'\s*:\s*\(([^)]*)\)/);
  if (!descrMatch || !fortranMatch || !shapeMatch) {
    throw new Error(`unrecognized .npy header: ${text}`);
  }
  const shape = shapeMatch[1]
    .split(",")
    .map((part) => part.trim())
    .filter((part) => part.length > 0)
    .map((part) => {
      const value = Number(part);
      if (!Number.isInteger(value) || value < 0) {
        throw new Error(`bad dimension in .npy shape: ${part}`);
      }
      return value;
    });
  return { descr: descrMatch[1], fortran: fortranMatch[1] === "True", shape };
}

export function parseNpy(buffer: Buffer): NpyArray {
  for (let i = 0; i < MAGIC.length; i += 1) {
    if (buffer[i] !== MAGIC[i]) {
      throw new Error("not a .npy file (bad magic)");
    }
  }
  const major = buffer[6];
  let headerLength: number;
  let headerStart: number;
  if (major === 1) {
    headerLength = buffer.readUInt16LE(8);
    headerStart = 10;
  } else if (major === 2) {
    headerLength = buffer.readUInt32LE(8);
    headerStart = 12;
  } else {
    throw new Error(`unsupported .npy version ${major}`);
  }
  const header = parseHeader(buffer.toString("latin1", headerStart, headerStart + headerLength));
  if (header.fortran) {
    throw new Error("fortran-order .npy arrays are not supported");
  }
  const count = header.shape.reduce((a, b) => a * b, 1);
  const body = headerStart + headerLength;
  // Node Buffers are views into a pool; slice to an aligned standalone copy.
  const bytesFor = (perItem: number) =>
    new Uint8Array(buffer.subarray(body, body + count * perItem)).buffer;
  let data: NpyArray["data"];
  switch (header.descr) {
    case "<f4":
      data = new Float32Array(bytesFor(4));
      break;
    case "<f8":
      data = new Float64Array(bytesFor(8));
      break;
    case "|u1":
      data = new Uint8Array(bytesFor(1));
      break;
    case "<i8": {
      const wide = new BigInt64Array(bytesFor(8));
      const narrow = new Int32Array(wide.length);
      for (let i = 0; i < wide.length; i += 1) {
        const v = wide[i];
        if (v > 2147483647n || v < -2147483648n) {
          throw new Error("int64 value out of int32 range");
        }
        narrow[i] = Number(v);
      }
      data = narrow;
      break;
    }
    default:
      throw new Error(`unsupported .npy dtype ${header.descr}`);
  }
  if (data.length !== count) {
    throw new Error(`truncated .npy payload: have ${data.length}, want ${count}`);
  }
  return { data, shape: header.shape };
}

export function readNpy(path: string): NpyArray {
  return parseNpy(readFileSync(path));
}

export function readNpyF32(path: string): { data: Float32Array; shape: number[] } {
  const arr = readNpy(path);
  if (!(arr.data instanceof Float32Array)) {
    throw new Error(`${path}: expected float32 payload`);
  }
  return { data: arr.data, shape: arr.shape };
}

export function readNpyF64(path: string): { data: Float64Array; shape: number[] } {
  const arr = readNpy(path);
  if (!(arr.data instanceof Float64Array)) {
    throw new Error(`${path}: expected float64 payload`);
  }
  return { data: arr.data, shape: arr.shape };
}
