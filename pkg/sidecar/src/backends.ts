/**
 * Alignment backends.
 *
 * The diagonal backend is the protocol test stub: token i links to token i
 * while both sides have one. The embedding backend splits words into
 * subword chunks, embeds them, links mutual-best subword pairs above a
 * similarity threshold, and reduces the subword links back to word level.
 */

import { cosine, Embedder, embedToken } from "./embedding";
import { Link } from "./protocol";
import { reduceSubwordLinks } from "./reduce";

export interface Backend {
  readonly name: string;
  align(src: string[], tgt: string[]): Link[];
}

export class DiagonalBackend implements Backend {
  readonly name = "diagonal";

  align(src: string[], tgt: string[]): Link[] {
    const n = Math.min(src.length, tgt.length);
    const links: Link[] = [];
    for (let i = 0; i < n; i++) {
      links.push([i, i]);
    }
    return links;
  }
}

const MAX_CHUNK = 4;

/** Split a word into subword chunks of up to MAX_CHUNK characters; the last
 * chunk absorbs a trailing single character so chunks stay >= 2 long. */
export function subwordChunks(word: string): string[] {
  if (word.length <= MAX_CHUNK) {
    return [word];
  }
  const chunks: string[] = [];
  for (let i = 0; i < word.length; i += MAX_CHUNK) {
    chunks.push(word.slice(i, i + MAX_CHUNK));
  }
  const last = chunks[chunks.length - 1];
  if (chunks.length > 1 && last !== undefined && last.length === 1) {
    chunks.splice(chunks.length - 2, 2, chunks[chunks.length - 2] + last);
  }
  return chunks;
}

export interface EmbeddingBackendOptions {
  threshold?: number;
  embedder?: Embedder;
}

export class EmbeddingBackend implements Backend {
  readonly name = "embedding";
  readonly threshold: number;
  private readonly embedder: Embedder;

  constructor(options: EmbeddingBackendOptions = {}) {
    this.threshold = options.threshold ?? 0.5;
    this.embedder = options.embedder ?? embedToken;
  }

  align(src: string[], tgt: string[]): Link[] {
    const srcUnits: string[] = [];
    const srcOwner: number[] = [];
    src.forEach((word, wi) => {
      for (const chunk of subwordChunks(word)) {
        srcUnits.push(chunk);
        srcOwner.push(wi);
      }
    });
    const tgtUnits: string[] = [];
    const tgtOwner: number[] = [];
    tgt.forEach((word, wj) => {
      for (const chunk of subwordChunks(word)) {
        tgtUnits.push(chunk);
        tgtOwner.push(wj);
      }
    });

    const srcVectors = srcUnits.map(this.embedder);
    const tgtVectors = tgtUnits.map(this.embedder);

    const similarity: number[][] = srcVectors.map((sv) =>
      tgtVectors.map((tv) => cosine(sv, tv)),
    );
    const bestForSrc = similarity.map((row) => argmax(row));
    const bestForTgt = transposeArgmax(similarity, tgtUnits.length);

    const subwordLinks: Link[] = [];
    for (let i = 0; i < srcUnits.length; i++) {
      const j = bestForSrc[i];
      if (j === undefined || j < 0) continue;
      const score = similarity[i]?.[j] ?? -1;
      if (score >= this.threshold && bestForTgt[j] === i) {
        subwordLinks.push([i, j]);
      }
    }
    return reduceSubwordLinks(subwordLinks, srcOwner, tgtOwner);
  }
}

function argmax(row: number[]): number {
  let best = -1;
  let bestScore = -Infinity;
  for (let j = 0; j < row.length; j++) {
    const value = row[j] ?? -Infinity;
    if (value > bestScore) {
      bestScore = value;
      best = j;
    }
  }
  return best;
}

function transposeArgmax(matrix: number[][], width: number): number[] {
  const best = new Array<number>(width).fill(-1);
  const bestScore = new Array<number>(width).fill(-Infinity);
  for (let i = 0; i < matrix.length; i++) {
    const row = matrix[i];
    if (!row) continue;
    for (let j = 0; j < width; j++) {
      const value = row[j] ?? -Infinity;
      if (value > bestScore[j]!) {
        bestScore[j] = value;
        best[j] = i;
      }
    }
  }
  return best;
}

export function backendByName(name: string, options: EmbeddingBackendOptions = {}): Backend {
  if (name === "diagonal") {
    return new DiagonalBackend();
  }
  if (name === "embedding") {
    return new EmbeddingBackend(options);
  }
  throw new Error(`unknown backend '${name}' (expected diagonal or embedding)`);
}
