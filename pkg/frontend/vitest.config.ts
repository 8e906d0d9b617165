import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    // The deployed page is served same-origin with the API (or behind one
    // proxy); the e2e suite talks to a service on its own port, so the
    // simulated browser must not treat that as a cross-origin call. The
    // setting passes through to the happy-dom Window; vitest's bundled
    // option type predates it.
    environmentOptions: {
      happyDOM: {
        settings: { fetch: { disableSameOriginPolicy: true } },
      },
    },
    include: ["tests/**/*.test.ts"],
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
