import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    environment: 'happy-dom',
    environmentOptions: {
      // the live-service suite fetches across ports with no CORS proxy
      happyDOM: {
        settings: { fetch: { disableSameOriginPolicy: true } },
      },
    },
    include: ['test/**/*.test.ts'],
    // the live-service test spawns uvicorn and waits for real runs
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
