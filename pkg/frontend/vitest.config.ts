import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    setupFiles: ["tests/setup.ts"],
    globalSetup: ["tests/e2e/global-setup.ts"],
    testTimeout: 30000,
    hookTimeout: 60000,
    // e2e tests share one seeded server; keep files sequential
    fileParallelism: false,
  },
});
