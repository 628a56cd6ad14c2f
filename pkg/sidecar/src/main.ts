#!/usr/bin/env node
/**
 * Aligner sidecar entry point.
 *
 *   node dist/main.js --backend diagonal
 *   node dist/main.js --backend embedding --sim-threshold 0.6 --endpoint tcp:9911
 *
 * --endpoint stdio (default) serves one client on stdin/stdout;
 * --endpoint tcp:PORT serves concurrent local clients.
 */

import { parseArgs } from "util";

import { backendByName } from "./backends";
import { serveStdio, serveTcp } from "./server";

function main(): void {
  const { values } = parseArgs({
    options: {
      backend: { type: "string", default: "diagonal" },
      endpoint: { type: "string", default: "stdio" },
      "sim-threshold": { type: "string" },
    },
  });

  const threshold = values["sim-threshold"]
    ? Number(values["sim-threshold"])
    : undefined;
  if (threshold !== undefined && !(threshold > 0 && threshold <= 1)) {
    console.error(`invalid --sim-threshold ${values["sim-threshold"]}`);
    process.exit(1);
  }
  const backend = backendByName(values.backend ?? "diagonal", { threshold });

  const endpoint = values.endpoint ?? "stdio";
  if (endpoint === "stdio") {
    serveStdio(backend);
    return;
  }
  if (endpoint.startsWith("tcp:")) {
    const port = Number(endpoint.slice("tcp:".length));
    if (!Number.isInteger(port) || port <= 0 || port > 65535) {
      console.error(`invalid TCP port in --endpoint ${endpoint}`);
      process.exit(1);
    }
    serveTcp(backend, port);
    return;
  }
  console.error(`unknown --endpoint ${endpoint} (expected stdio or tcp:PORT)`);
  process.exit(1);
}

try {
  main();
} catch (error) {
  console.error(error instanceof Error ? error.message : String(error));
  process.exit(1);
}
