import { defineConfig } from 'vitest/config';

export default defineConfig({
  resolve: {
    // Source files import siblings with ".js" suffixes (valid browser ESM
    // after tsc); map them back to the .ts sources for tests.
    alias: [{ find: /^(\.{1,2}\/.*)\.js$/, replacement: '$1' }],
  },
  test: {
    environment: 'happy-dom',
    include: ['tests/**/*.test.ts'],
  },
});
