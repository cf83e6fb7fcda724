/**
 * CLI entry point. Prints the bound port on stdout so callers using an
 * ephemeral port (--port 0) can discover it.
 *
 * Usage: node dist/server.js [--port N] [--metric acc|f1] [--seed N] [--no-dump]
 */

import { AddressInfo } from "net";

import { createService, DEFAULT_CONFIG, ServiceConfig } from "./service";

function parseArgs(argv: string[]): ServiceConfig & { port: number } {
  const config = { ...DEFAULT_CONFIG, port: 8630 };
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    switch (arg) {
      case "--port":
        config.port = Number(argv[++i]);
        break;
      case "--metric": {
        const metric = argv[++i];
        if (metric !== "acc" && metric !== "f1") {
          throw new Error(`unknown metric ${metric}; expected acc or f1`);
        }
        config.metric = metric;
        break;
      }
      case "--seed":
        config.seed = Number(argv[++i]);
        break;
      case "--no-dump":
        config.dumpPredictions = false;
        break;
      case "--real-model":
        config.mock = false;
        break;
      default:
        throw new Error(`unknown argument ${arg}`);
    }
  }
  if (!Number.isInteger(config.port) || config.port < 0 || config.port > 65535) {
    throw new Error(`invalid port ${config.port}`);
  }
  return config;
}

function main(): void {
  const config = parseArgs(process.argv.slice(2));
  const server = createService(config);
  server.listen(config.port, "127.0.0.1", () => {
    const { port } = server.address() as AddressInfo;
    console.log(`scorer-service listening on port ${port}`);
  });
}

main();
