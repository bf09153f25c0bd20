import { defineConfig } from 'vitest/config';

export default defineConfig({
  server: {
    proxy: {
      // Forward API calls to a locally running `bandnet serve`.
      '/datasets': 'http://127.0.0.1:8000',
      '/tasks': 'http://127.0.0.1:8000',
      '/session': 'http://127.0.0.1:8000',
    },
  },
  test: {
    environment: 'jsdom',
  },
});
