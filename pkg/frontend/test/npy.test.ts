import { describe, expect, it } from "vitest";

import { parseNpy, readNpy } from "../src/npy.js";
import { fixturePath } from "./helpers.js";

/** Build a v1.0 .npy buffer around a raw payload. */
function npyBuffer(descr: string, shape: number[], payload: Buffer): Buffer {
  let header = `{'descr': '${descr}', 'fortran_order': False, 'shape': (${shape.join(", ")}${
    shape.length === 1 ? "," : ""
  }), }`;
  const baseLen = 10 + header.length + 1;
  header += " ".repeat((64 - (baseLen % 64)) % 64) + "\n";
  const head = Buffer.alloc(10);
  head.write("\x93NUMPY", 0, "latin1");
  head[6] = 1;
  head[7] = 0;
  head.writeUInt16LE(header.length, 8);
  return Buffer.concat([head, Buffer.from(header, "latin1"), payload]);
}

describe("npy parsing", () => {
  it("reads float32 C-order payloads", () => {
    const payload = Buffer.alloc(6 * 4);
    const values = [1.5, -2.25, 3.0, 0.0, -0.5, 100.0];
    values.forEach((v, i) => payload.writeFloatLE(v, i * 4));
    const arr = parseNpy(npyBuffer("<f4", [2, 3], payload));
    expect(arr.shape).toEqual([2, 3]);
    expect(Array.from(arr.data)).toEqual(values);
    expect(arr.data).toBeInstanceOf(Float32Array);
  });

  it("reads float64 payloads", () => {
    const payload = Buffer.alloc(2 * 8);
    payload.writeDoubleLE(Math.PI, 0);
    payload.writeDoubleLE(-1e-300, 8);
    const arr = parseNpy(npyBuffer("<f8", [2], payload));
    expect(arr.data).toBeInstanceOf(Float64Array);
    expect(arr.data[0]).toBe(Math.PI);
    expect(arr.data[1]).toBe(-1e-300);
  });

  it("reads uint8 payloads", () => {
    const arr = parseNpy(npyBuffer("|u1", [4], Buffer.from([0, 1, 255, 7])));
    expect(arr.data).toBeInstanceOf(Uint8Array);
    expect(Array.from(arr.data)).toEqual([0, 1, 255, 7]);
  });

  it("rejects bad magic and unsupported dtypes", () => {
    expect(() => parseNpy(Buffer.from("not an npy file at all"))).toThrow(/magic/);
    const payload = Buffer.alloc(4);
    expect(() => parseNpy(npyBuffer("<i2", [2], payload))).toThrow(/dtype/);
  });

  it("rejects truncated payloads", () => {
    const payload = Buffer.alloc(3 * 4);
    expect(() => parseNpy(npyBuffer("<f4", [4], payload))).toThrow(/truncated/);
  });

  it("reads the fixture arrays with their recorded shapes", () => {
    const fields = readNpy(fixturePath("uniform_in_vx"));
    expect(fields.shape).toEqual([32, 32, 32]);
    expect(fields.data).toBeInstanceOf(Float32Array);
    const traces = readNpy(fixturePath("e2e_traces"));
    expect(traces.shape).toEqual([15, 200]);
    expect(traces.data).toBeInstanceOf(Float64Array);
    const bands = readNpy(fixturePath("layered_band_i"));
    expect(bands.shape).toEqual([32]);
    expect(bands.data).toBeInstanceOf(Uint8Array);
  });
});
