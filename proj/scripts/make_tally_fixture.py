#!/usr/bin/env python3
"""Writes a scripted A/B key and judgment file for the tally tests.

Fifty items spread over four length quartiles. The judgments give, per
quartile, BART wins (5, 4, 3, 3), NC-TS wins (6, 8, 9, 7) and Equal (1, 1, 1, 2).
Sides are assigned by a seeded RNG so both "left" and "right" choices occur.
"""

import json
import random
from pathlib import Path

BART_WINS = [5, 4, 3, 3]
NCTS_WINS = [6, 8, 9, 7]
EQUAL = [1, 1, 1, 2]
SEED = 20230501


def main() -> None:
    rng = random.Random(SEED)
    items = []
    judgments = []
    n = 0
    for q in range(4):
        outcomes = ["BART"] * BART_WINS[q] + ["NC-TS"] * NCTS_WINS[q] + ["equal"] * EQUAL[q]
        rng.shuffle(outcomes)
        for outcome in outcomes:
            item_id = f"wikismall-{n:03d}"
            n += 1
            left, right = ("BART", "NC-TS") if rng.random() < 0.5 else ("NC-TS", "BART")
            items.append({"id": item_id, "quartile": f"Q{q + 1}", "left": left, "right": right})
            if outcome == "equal":
                choice = "equal"
            else:
                choice = "left" if outcome == left else "right"
            judgments.append({"id": item_id, "choice": choice})

    out = Path(__file__).resolve().parent.parent / "tests" / "data"
    out.mkdir(parents=True, exist_ok=True)
    key = {"seed": SEED, "systems": ["BART", "NC-TS"], "items": items}
    (out / "tally_key.json").write_text(json.dumps(key, indent=2) + "\n")
    with open(out / "tally_judgments.jsonl", "w") as f:
        for j in judgments:
            f.write(json.dumps(j, separators=(",", ":")) + "\n")


if __name__ == "__main__":
    main()
