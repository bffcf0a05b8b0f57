/** Small numeric comparison helpers used by the parity tests. */

export type NumericArray = Float32Array | Float64Array | number[];

/**
 * Largest absolute difference between `got` and `want`, normalised by
 * the largest magnitude of `want`.  Zero reference with zero deviation
 * compares as 0; zero reference with any deviation as Infinity.
 */
export function maxRelDeviation(got: NumericArray, want: NumericArray): number {
  if (got.length !== want.length) {
    throw new Error(`length mismatch ${got.length} vs ${want.length}`);
  }
  let maxDiff = 0;
  let maxRef = 0;
  for (let i = 0; i < got.length; i += 1) {
    const d = Math.abs(got[i] - want[i]);
    if (d > maxDiff) {
      maxDiff = d;
    }
    const r = Math.abs(want[i]);
    if (r > maxRef) {
      maxRef = r;
    }
  }
  if (maxDiff === 0) {
    return 0;
  }
  return maxRef === 0 ? Infinity : maxDiff / maxRef;
}

/** Indices whose values differ at all between two arrays. */
export function changedIndices(a: NumericArray, b: NumericArray): number[] {
  if (a.length !== b.length) {
    throw new Error(`length mismatch ${a.length} vs ${b.length}`);
  }
  const out: number[] = [];
  for (let i = 0; i < a.length; i += 1) {
    if (a[i] !== b[i]) {
      out.push(i);
    }
  }
  return out;
}
