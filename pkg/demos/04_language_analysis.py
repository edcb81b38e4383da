#!/usr/bin/env python3
"""The preprocessing substrate: tokens, lemmas, POS tags, sentiment,
wordlist membership and averaged word vectors."""

import numpy as np

from trollbench.linguistics import (
    EmbeddingTable,
    analyze,
    embed_average,
    lexicon_hit,
    load_lexicons,
    sentiment,
)

text = "I wasn't aware you were the same person... my bad :P"
analyzed = analyze(text)
print(f"input: {text!r}")
print(f"{'surface':12s}{'lemma':12s}pos")
for token in analyzed.tokens:
    print(f"{token.surface:12s}{token.lemma:12s}{token.pos_tag}")

print("\nsentiment scores (positive, neutral, negative, compound):")
for sample in (
    "I hope the cancer kills you.",
    "Please post a video, the way I'm imagining this is adorable.",
    "completely neutral sentence about rocks",
):
    s = sentiment(analyze(sample))
    print(f"  {sample[:52]:54s} -> ({s.positive:.2f}, {s.neutral:.2f}, {s.negative:.2f}, {s.compound:+.3f})")

lexicons = load_lexicons()
samples = {
    "emoticons": "good one :P",
    "harmful": "you are all worthless",
    "emotion": "that was genuinely embarrassing",
    "swear": "well damn",
    "politeness": "would you mind checking?",
}
print("\nwordlist membership:")
for name, sample in samples.items():
    hit = lexicon_hit(lexicons[name], analyze(sample))
    print(f"  {name:11s} {sample!r:36s} -> {hit}")

table = EmbeddingTable.deterministic(["dogs", "barked", "loudly"], dimension=8)
vec = embed_average(table, analyze("Dogs barked loudly"))
print(f"\naveraged 8-d embedding of 'Dogs barked loudly': {np.round(vec, 3)}")
