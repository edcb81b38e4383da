#!/usr/bin/env python3
"""Inter-annotator agreement: Cohen's kappa and discrepancy listing.

Two annotators label the same snippets; kappa corrects raw agreement for
chance, and every disagreeing (item, aspect) pair comes out as a
discrepancy ready for adjudication.
"""

import dataclasses

import numpy as np

from trollbench.agreement import (
    ConfusionMatrix,
    cohen_kappa,
    format_kappa_table,
    pair_annotations,
)
from trollbench.schema import ResponseLabel, Strategy
from trollbench.synthetic import synthetic_corpus

print("hand-worked 2x2 example:")
m = ConfusionMatrix(["yes", "no"], np.array([[20, 5], [10, 15]]))
print(f"  [[20, 5], [10, 15]] -> kappa = {cohen_kappa(m):.2f}")

snippets, gold = synthetic_corpus()
subset = [gold[s.snippet_id] for s in snippets[:12]]

ann_a = [dataclasses.replace(a, annotator_id="ann_a") for a in subset]

# annotator B mostly agrees, but reads two responses differently
ann_b = []
for k, a in enumerate(subset):
    responses = list(a.responses)
    if k in (2, 5) and responses:
        flipped = Strategy.ENGAGE if responses[0].strategy != Strategy.ENGAGE else Strategy.TROLL
        responses[0] = ResponseLabel(responses[0].response_comment_id,
                                     responses[0].interpretation, flipped)
    ann_b.append(dataclasses.replace(a, annotator_id="ann_b", responses=tuple(responses)))

paired = pair_annotations(ann_a, ann_b, "ann_a", "ann_b")
print()
print(format_kappa_table(paired.kappa_report(), "ann_a", "ann_b"))

print("\ndiscrepancies to adjudicate:")
for disc in paired.discrepancies:
    print(f"  {disc.item_id} [{disc.aspect}]: {disc.label_a} vs {disc.label_b}")
