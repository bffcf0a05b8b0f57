import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["test/**/*.test.ts"],
    // The end-to-end run executes 200 field updates on a 64x64x32 grid in
    // plain TypeScript; give it room on a single-core box.
    testTimeout: 600_000,
    hookTimeout: 600_000,
  },
});
