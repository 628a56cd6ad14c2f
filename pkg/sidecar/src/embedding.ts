/**
 * Deterministic token embeddings from hashed character n-grams.
 *
 * No model download, no randomness: each token maps to a fixed unit vector,
 * so identical tokens embed identically (cosine 1) and tokens sharing
 * character material land close. That makes the embedding backend a lexical
 * aligner: strong on copied-through material (numbers, names, URLs, units),
 * weak on true translation pairs. Any embedder with this signature can be
 * swapped in; golden files record which one produced them.
 */

export const EMBEDDING_DIM = 64;

/** FNV-1a, 32-bit. */
function fnv1a(text: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return hash >>> 0;
}

function ngrams(token: string, n: number): string[] {
  const padded = `^${token.toLowerCase()}$`;
  if (padded.length <= n) {
    return [padded];
  }
  const out: string[] = [];
  for (let i = 0; i + n <= padded.length; i++) {
    out.push(padded.slice(i, i + n));
  }
  return out;
}

export type Embedder = (token: string) => Float64Array;

export function embedToken(token: string): Float64Array {
  const vector = new Float64Array(EMBEDDING_DIM);
  for (const gram of [...ngrams(token, 2), ...ngrams(token, 3)]) {
    const hash = fnv1a(gram);
    const index = hash % EMBEDDING_DIM;
    const sign = (hash >>> 8) & 1 ? 1 : -1;
    vector[index] = (vector[index] ?? 0) + sign;
  }
  let norm = 0;
  for (const x of vector) norm += x * x;
  norm = Math.sqrt(norm) || 1;
  for (let i = 0; i < vector.length; i++) {
    vector[i] = (vector[i] ?? 0) / norm;
  }
  return vector;
}

export function cosine(a: Float64Array, b: Float64Array): number {
  let sum = 0;
  for (let i = 0; i < a.length; i++) {
    sum += (a[i] ?? 0) * (b[i] ?? 0);
  }
  return sum;
}
