#!/usr/bin/env python3
"""The 5-fold cross-validation matrix on the bundled synthetic corpus.

Each rotation holds out one fold for testing and the next for tuning the
regularization strength; predictions pool across rotations so every
instance is scored exactly once.  A short cell list keeps this demo quick;
pass --full for the whole majority/single/all matrix.
"""

import sys
import time

from trollbench.experiments import evaluate_matrix, render_table_text
from trollbench.synthetic import synthetic_corpus, synthetic_resources

full = "--full" in sys.argv

snippets, gold = synthetic_corpus()
resources = synthetic_resources(snippets)
cells = ("majority", "single", "all") if full else ("majority", "all")
groups = None if full else ("swr", "cue", "emt", "pol", "glv")

start = time.time()
report = evaluate_matrix(
    snippets,
    gold,
    cells=cells,
    groups=groups or ("ngr", "pol", "emt", "hrm", "syn", "swr", "usr", "frm", "cue", "glv"),
    seed=13,
    resources=resources,
)
print(render_table_text(report))
print(f"({time.time() - start:.1f}s, seed 13)")
print(f"misclassified instances dumped for error analysis: {len(report.errors)}")
if report.errors:
    worst = report.errors[0]
    top = ", ".join(name for name, _ in worst.top_features[:3])
    print(f"example: {worst.task} gold={worst.gold} predicted={worst.predicted}")
    print(f"  text: {worst.text[:70]!r}")
    print(f"  strongest features for the predicted class: {top}")
