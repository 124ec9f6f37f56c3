import { defineConfig } from "vite";

export default defineConfig({
  server: {
    proxy: {
      // dev-mode: forward API calls to a locally running `fairaudit serve`
      "/datasets": "http://127.0.0.1:8000",
    },
  },
  test: {
    environment: "jsdom",
  },
});
