/**
 * Wire protocol: newline-delimited JSON, one response per request.
 *
 * Request:  {"id": int, "src": ["tokens"...], "tgt": ["tokens"...]}
 * Response: {"id": int, "links": [[i, j], ...]}
 *           {"id": int|null, "error": "message"}
 *
 * Exactly one request may be outstanding per connection; a malformed
 * request produces an error response and the connection stays open.
 */

export interface AlignRequest {
  id: number;
  src: string[];
  tgt: string[];
}

export type Link = [number, number];

export interface AlignResponse {
  id: number;
  links: Link[];
}

export interface ErrorResponse {
  id: number | null;
  error: string;
}

export type Response = AlignResponse | ErrorResponse;

function isTokenList(value: unknown): value is string[] {
  return Array.isArray(value) && value.every((t) => typeof t === "string");
}

/** Parse and validate one request line; throws with a client-safe message. */
export function parseRequest(line: string): AlignRequest {
  let obj: unknown;
  try {
    obj = JSON.parse(line);
  } catch {
    throw new ProtocolViolation(null, "request is not valid JSON");
  }
  if (typeof obj !== "object" || obj === null) {
    throw new ProtocolViolation(null, "request must be a JSON object");
  }
  const record = obj as Record<string, unknown>;
  const id = record["id"];
  if (typeof id !== "number" || !Number.isInteger(id)) {
    throw new ProtocolViolation(null, "request id must be an integer");
  }
  if (!isTokenList(record["src"]) || record["src"].length === 0) {
    throw new ProtocolViolation(id, "src must be a nonempty token list");
  }
  if (!isTokenList(record["tgt"]) || record["tgt"].length === 0) {
    throw new ProtocolViolation(id, "tgt must be a nonempty token list");
  }
  return { id, src: record["src"], tgt: record["tgt"] };
}

export class ProtocolViolation extends Error {
  readonly id: number | null;

  constructor(id: number | null, message: string) {
    super(message);
    this.id = id;
  }
}

export function formatResponse(response: Response): string {
  return JSON.stringify(response) + "\n";
}

/** Links must stay within both token lists; duplicates collapse, order is
 * (i, j) lexicographic so output is deterministic. */
export function sanitizeLinks(links: Iterable<Link>, srcLen: number, tgtLen: number): Link[] {
  const seen = new Set<string>();
  const out: Link[] = [];
  for (const [i, j] of links) {
    if (!Number.isInteger(i) || !Number.isInteger(j) || i < 0 || j < 0 || i >= srcLen || j >= tgtLen) {
      throw new Error(`link ${i}-${j} out of bounds for (${srcLen}, ${tgtLen})`);
    }
    const key = `${i}-${j}`;
    if (!seen.has(key)) {
      seen.add(key);
      out.push([i, j]);
    }
  }
  out.sort((a, b) => (a[0] - b[0]) || (a[1] - b[1]));
  return out;
}
