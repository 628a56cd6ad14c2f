/**
 * Subword-to-word reduction: a word pair is linked iff any of its subword
 * pairs is linked ("any-link" union). Biasing toward more word links means
 * fewer words count as unaligned downstream, which is the safe direction
 * for a precision-first coverage check.
 */

import { Link } from "./protocol";

/** subwordOwner[k] = index of the word that subword k belongs to. */
export function reduceSubwordLinks(
  subwordLinks: Iterable<Link>,
  srcOwner: number[],
  tgtOwner: number[],
): Link[] {
  const seen = new Set<string>();
  const out: Link[] = [];
  for (const [si, tj] of subwordLinks) {
    const wi = srcOwner[si];
    const wj = tgtOwner[tj];
    if (wi === undefined || wj === undefined) {
      throw new Error(`subword link ${si}-${tj} outside the owner maps`);
    }
    const key = `${wi}-${wj}`;
    if (!seen.has(key)) {
      seen.add(key);
      out.push([wi, wj]);
    }
  }
  out.sort((a, b) => (a[0] - b[0]) || (a[1] - b[1]));
  return out;
}
