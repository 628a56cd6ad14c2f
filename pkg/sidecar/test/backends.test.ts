import { describe, expect, it } from "vitest";

import {
  backendByName,
  DiagonalBackend,
  EmbeddingBackend,
  subwordChunks,
} from "../src/backends";
import { cosine, embedToken } from "../src/embedding";

describe("diagonal backend", () => {
  it("links token i to token i while both sides last", () => {
    const backend = new DiagonalBackend();
    expect(backend.align(["a", "b", "c"], ["x", "y", "z", "w", "v"])).toEqual([
      [0, 0],
      [1, 1],
      [2, 2],
    ]);
  });
});

describe("token embeddings", () => {
  it("are deterministic and unit length", () => {
    const a = embedToken("Bahnhof");
    const b = embedToken("Bahnhof");
    expect(Array.from(a)).toEqual(Array.from(b));
    let norm = 0;
    for (const x of a) norm += x * x;
    expect(norm).toBeCloseTo(1, 9);
  });

  it("identical tokens have cosine 1, unrelated tokens much less", () => {
    expect(cosine(embedToken("kilometer"), embedToken("kilometer"))).toBeCloseTo(1, 9);
    const unrelated = cosine(embedToken("kilometer"), embedToken("xylophone"));
    expect(unrelated).toBeLessThan(0.9);
  });

  it("is case-insensitive", () => {
    expect(cosine(embedToken("Meter"), embedToken("meter"))).toBeCloseTo(1, 9);
  });
});

describe("subword chunking", () => {
  it("keeps short words whole", () => {
    expect(subwordChunks("km")).toEqual(["km"]);
  });

  it("splits long words and avoids 1-character tails", () => {
    expect(subwordChunks("kilometern")).toEqual(["kilo", "mete", "rn"]);
    expect(subwordChunks("kilometer")).toEqual(["kilo", "meter"]);
    for (const chunk of subwordChunks("incomprehensibilities")) {
      expect(chunk.length).toBeGreaterThanOrEqual(2);
    }
  });
});

describe("embedding backend", () => {
  const backend = new EmbeddingBackend();

  it("aligns copied-through material", () => {
    const links = backend.align(
      ["the", "fee", "is", "14,50", "euros"],
      ["die", "Gebühr", "beträgt", "14,50", "Euro"],
    );
    expect(links).toContainEqual([3, 3]);
    expect(links).toContainEqual([4, 4]);
  });

  it("aligns identical sentences fully", () => {
    const tokens = ["alpha", "beta", "gamma"];
    const links = backend.align(tokens, tokens);
    expect(links).toEqual([
      [0, 0],
      [1, 1],
      [2, 2],
    ]);
  });

  it("returns word-level indices after subword splitting", () => {
    const links = backend.align(
      ["incometaxindiaefiling", "portal"],
      ["das", "incometaxindiaefiling", "Portal"],
    );
    for (const [i, j] of links) {
      expect(i).toBeGreaterThanOrEqual(0);
      expect(i).toBeLessThan(2);
      expect(j).toBeGreaterThanOrEqual(0);
      expect(j).toBeLessThan(3);
    }
    expect(links).toContainEqual([0, 1]);
  });

  it("is deterministic across instances", () => {
    const again = new EmbeddingBackend();
    const src = ["Bericht", "über", "10.000", "Meter"];
    const tgt = ["report", "about", "10.000", "meters"];
    expect(backend.align(src, tgt)).toEqual(again.align(src, tgt));
  });

  it("respects the similarity threshold", () => {
    const strict = new EmbeddingBackend({ threshold: 0.999 });
    const links = strict.align(["alpha", "beta"], ["alpha", "delta"]);
    expect(links).toEqual([[0, 0]]);
  });
});

describe("backend factory", () => {
  it("builds by name", () => {
    expect(backendByName("diagonal").name).toBe("diagonal");
    expect(backendByName("embedding").name).toBe("embedding");
  });

  it("rejects unknown names", () => {
    expect(() => backendByName("bert-base")).toThrowError(/unknown backend/);
  });
});
