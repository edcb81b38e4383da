#!/usr/bin/env python3
"""The four-aspect label space and its three logical constraints.

Attempts carry (intention, disclosure); every direct response carries
(interpretation, strategy).  Constraints A, B and C cut the raw space of
189 single-response combinations down to 95.
"""

from trollbench.schema import (
    Disclosure,
    Intention,
    Interpretation,
    Strategy,
    distribution,
    enumerate_valid,
    validate_combination,
)
from trollbench.synthetic import synthetic_corpus

I, D, R, B = Intention, Disclosure, Interpretation, Strategy

print("attempt-pair validity (constraints A and B):")
for i in I:
    for d in D:
        violations = validate_combination(i, d, [])
        mark = "ok " if not violations else f"violates {violations}"
        print(f"  ({i.value:10s}, {d.value:7s}) {mark}")

print("\na response interpreted as trolling cannot use the Normal strategy (C):")
print(" ", validate_combination(I.TROLLING, D.EXPOSED, [(R.TROLLING, B.NORMAL)]))

print("\nvalid assignment counts by response count:")
for n in range(4):
    print(f"  n={n}: {enumerate_valid(n):>7} of {9 * 21 ** n}")

snippets, gold = synthetic_corpus()
dist = distribution(gold.values())
print("\nclass distribution of the bundled synthetic corpus:")
for aspect in "IDRB":
    row = ", ".join(
        f"{cls} {stat.percent:.1f}% ({stat.count})"
        for cls, stat in dist[aspect].items()
        if stat.count
    )
    print(f"  {aspect}: {row}")
