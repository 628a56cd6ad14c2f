/**
 * Line-oriented server: stdio for the single-client sidecar case, TCP for
 * multiple concurrent clients. Each connection is independent; within one
 * connection requests are answered strictly in order (one outstanding
 * request per connection, per the protocol contract).
 */

import * as net from "net";
import * as readline from "readline";
import { Writable } from "stream";

import { Backend } from "./backends";
import {
  formatResponse,
  parseRequest,
  ProtocolViolation,
  sanitizeLinks,
} from "./protocol";

export function handleLine(backend: Backend, line: string): string | null {
  if (!line.trim()) {
    return null;
  }
  try {
    const request = parseRequest(line);
    const links = sanitizeLinks(
      backend.align(request.src, request.tgt),
      request.src.length,
      request.tgt.length,
    );
    return formatResponse({ id: request.id, links });
  } catch (error) {
    if (error instanceof ProtocolViolation) {
      return formatResponse({ id: error.id, error: error.message });
    }
    const message = error instanceof Error ? error.message : String(error);
    return formatResponse({ id: null, error: `backend failure: ${message}` });
  }
}

function attach(backend: Backend, input: NodeJS.ReadableStream, output: Writable): void {
  const lines = readline.createInterface({ input, crlfDelay: Infinity });
  lines.on("line", (line) => {
    const response = handleLine(backend, line);
    if (response !== null) {
      output.write(response);
    }
  });
}

export function serveStdio(backend: Backend): void {
  attach(backend, process.stdin, process.stdout);
}

export function serveTcp(backend: Backend, port: number, host = "127.0.0.1"): net.Server {
  const server = net.createServer((socket) => {
    socket.on("error", () => socket.destroy());
    attach(backend, socket, socket);
  });
  server.listen(port, host, () => {
    // eslint-disable-next-line no-console
    console.error(`aligner-sidecar (${backend.name}) listening on ${host}:${port}`);
  });
  return server;
}
