"""Minimal aligner stub speaking the sidecar wire protocol on stdin/stdout.

Modes (first CLI arg): diagonal (default), slow-every-3 (never answers every
third request), wrong-id (answers with id+1), error-on-empty (error response
when src is empty), garbage (non-JSON line).
"""

import json
import sys


def main() -> None:
    mode = sys.argv[1] if len(sys.argv) > 1 else "diagonal"
    n = 0
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        req = json.loads(line)
        n += 1
        if mode == "slow-every-3" and n % 3 == 0:
            continue  # simulate a hang for this request
        if mode == "garbage":
            print("!!not json!!", flush=True)
            continue
        rid = req["id"]
        if mode == "wrong-id":
            rid += 1
        src, tgt = req.get("src", []), req.get("tgt", [])
        if mode == "error-on-empty" and not src:
            print(json.dumps({"id": rid, "error": "empty source"}), flush=True)
            continue
        links = [[i, i] for i in range(min(len(src), len(tgt)))]
        print(json.dumps({"id": rid, "links": links}), flush=True)


if __name__ == "__main__":
    main()
