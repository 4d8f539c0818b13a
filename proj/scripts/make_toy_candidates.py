#!/usr/bin/env python3
"""Writes data/toy_candidates.jsonl: 20 hand-written sentences with stub scores.

The scores are synthetic. Each set holds four hypotheses in beam order:
  0  a copy of the source (the typical failure of a direct model)
  1  a simplification close to the reference
  2  a truncated version
  3  a simplification with a substituted word
Log-probabilities are shaped so the direct model prefers the copy while the
language-model and length terms can move the choice elsewhere.
"""

import json
import random
from pathlib import Path

PAIRS = [
    ("The committee postponed the vote until further notice .",
     "The committee delayed the vote ."),
    ("Residents were advised to remain indoors during the storm .",
     "People were told to stay inside during the storm ."),
    ("The museum acquired a collection of ancient coins from a private donor .",
     "The museum got old coins from a donor ."),
    ("Despite heavy rainfall , the festival proceeded as scheduled .",
     "The festival went ahead even though it rained a lot ."),
    ("The physician prescribed medication to alleviate the patient's symptoms .",
     "The doctor gave the patient medicine to ease the symptoms ."),
    ("The bridge , which was constructed in 1890 , remains operational today .",
     "The bridge was built in 1890 . It is still used today ."),
    ("Numerous species inhabit the tropical rainforest , many of which remain undiscovered .",
     "Many kinds of animals live in the rainforest . Many have not been found yet ."),
    ("The company announced that it would relocate its headquarters to a larger facility .",
     "The company said it would move its main office to a bigger building ."),
    ("He was appointed ambassador after serving for a decade in the foreign ministry .",
     "He became ambassador after working ten years in the foreign ministry ."),
    ("The volcano erupted unexpectedly , compelling thousands of inhabitants to evacuate .",
     "The volcano erupted suddenly . Thousands of people had to leave ."),
    ("Scholars continue to debate the origins of the manuscript , which lacks a signature .",
     "Experts still argue about where the unsigned manuscript came from ."),
    ("The legislation prohibits the sale of tobacco products to individuals under eighteen .",
     "The law bans selling tobacco to people under eighteen ."),
    ("The orchestra performed a symphony that had not been heard publicly for over a century .",
     "The orchestra played a symphony that nobody had heard in public for over a hundred years ."),
    ("Following the merger , several departments were consolidated in order to reduce expenditure .",
     "After the merger , some departments were joined to cut costs ."),
    ("The explorer documented his observations meticulously , producing detailed maps of the uncharted coastline .",
     "The explorer wrote careful notes and made detailed maps of the unknown coast ."),
    ("Although the treaty was ratified by most nations , its implementation was considerably delayed by disputes .",
     "Most countries signed the treaty , but arguments slowed down its start ."),
    ("The town is renowned for its medieval architecture , which attracts a substantial number of tourists annually .",
     "The town is famous for its old buildings . Many tourists visit every year ."),
    ("Researchers discovered that the compound inhibits the growth of bacteria without harming surrounding tissue , a promising result .",
     "Researchers found that the substance stops bacteria from growing without hurting nearby tissue ."),
    ("The novel , published posthumously , received widespread acclaim and was subsequently translated into numerous languages .",
     "The novel came out after the author died . People loved it , and it was translated into many languages ."),
    ("Because the reservoir had diminished substantially during the prolonged drought , authorities imposed strict limitations on water consumption .",
     "The lake behind the dam got very low during the long dry period , so officials limited water use ."),
]

SIMPLE_WORDS = {
    "the", "a", "an", "is", "was", "it", "to", "of", "in", "and", "people", "got",
    "old", "made", "said", "new", "many", "told", "stay", "inside", "after", "before",
    "doctor", "gave", "built", "still", "used", "live", "found", "move", "bigger",
    "became", "ten", "years", "leave", "bans", "law", "played", "cut", "costs",
    "famous", "visit", "every", "year", "stops", "loved", "low", "long", "dry",
}

SUBSTITUTES = {"vote": "election", "storm": "weather", "coins": "money", "bridge": "tower"}


def lm_token_logps(text, rng):
    out = []
    for tok in text.split():
        word = tok.lower()
        if word in SIMPLE_WORDS or not word.isalpha():
            base = -1.5
        elif len(word) > 8:
            base = -6.0
        else:
            base = -3.0
        out.append(round(base + rng.uniform(-0.5, 0.5), 4))
    return out


def substitute(text):
    toks = text.split()
    for i, tok in enumerate(toks):
        if tok.lower() in SUBSTITUTES:
            toks[i] = SUBSTITUTES[tok.lower()]
            return " ".join(toks)
    return " ".join(toks[:-1] + ["too", toks[-1]])


def truncate(text):
    toks = text.split()
    keep = max(2, len(toks) // 2)
    return " ".join(toks[:keep] + ["."])


def main():
    rng = random.Random(20230501)
    root = Path(__file__).resolve().parent.parent
    lines = []
    for i, (source, simple) in enumerate(PAIRS):
        hyps = [source, simple, truncate(source), substitute(simple)]
        n_src = len(source.split())
        direct = [-0.25 * n_src, -0.25 * n_src - 1.2, -0.25 * n_src - 2.5, -0.25 * n_src - 2.0]
        cands = []
        for rank, text in enumerate(hyps):
            n = len(text.split())
            cands.append({
                "rank": rank,
                "text": text,
                "logp_direct": round(direct[rank] + rng.uniform(-0.2, 0.0), 4),
                "logp_channel": round(-0.4 * n_src - (0.0 if rank == 0 else 0.3 * n) - rng.uniform(0, 1), 4),
                "lm_token_logps": lm_token_logps(text, rng),
            })
        refs = [simple]
        if i % 3 == 0:
            refs.append(simple.replace(" .", " ;").rstrip(" ;") + " .")
        record = {"id": f"toy-{i:02d}", "source": source, "references": refs, "candidates": cands}
        lines.append(json.dumps(record, ensure_ascii=False))
    out = root / "data" / "toy_candidates.jsonl"
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} sets to {out}")


if __name__ == "__main__":
    main()
