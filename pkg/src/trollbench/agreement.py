"""Inter-annotator agreement (Cohen's kappa) and discrepancy listing.

Attempt-level aspects (I, D) pair items by snippet id, response-level
aspects (R, B) by (snippet id, response comment id).  Snippets discarded by
either annotator are abstentions: excluded from kappa, surfaced as
discard-mismatch entries when only one side discarded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .schema import ASPECT_CLASSES, SnippetAnnotation


class UndefinedAgreementError(ValueError):
    """Raised when kappa is requested over zero paired items."""


@dataclass
class ConfusionMatrix:
    classes: list[str]
    counts: np.ndarray  # square, counts[a][b] = items annotator A labeled a, B labeled b

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[str, str]], classes: Sequence[str]) -> "ConfusionMatrix":
        index = {c: k for k, c in enumerate(classes)}
        counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
        for a, b in pairs:
            counts[index[a], index[b]] += 1
        return cls(list(classes), counts)

    @property
    def n(self) -> int:
        return int(self.counts.sum())


@dataclass
class LabelPairSet:
    aspect: str
    pairs: list[tuple[str, str]] = field(default_factory=list)

    def matrix(self) -> ConfusionMatrix:
        classes = [cls.value for cls in ASPECT_CLASSES[self.aspect]]
        return ConfusionMatrix.from_pairs(self.pairs, classes)


def observed_expected(m: ConfusionMatrix) -> tuple[float, float]:
    n = m.n
    if n == 0:
        raise UndefinedAgreementError("agreement undefined over zero pairs")
    counts = m.counts.astype(np.float64)
    p_o = float(np.trace(counts)) / n
    rows = counts.sum(axis=1)
    cols = counts.sum(axis=0)
    p_e = float(rows @ cols) / (n * n)
    return p_o, p_e


def cohen_kappa(m: ConfusionMatrix, weighted: bool = False) -> float:
    """Chance-corrected agreement kappa = (p_o - p_e)/(1 - p_e).

    p_e = 1 forces every pair into a single diagonal cell, so perfect
    agreement returns exactly 1.0 instead of 0/0.  With ``weighted`` a
    linear weight |i - j|/(K - 1) over class positions is used; all four
    aspects are nominal, so the unweighted form is the default.
    """
    if not weighted:
        p_o, p_e = observed_expected(m)
        if p_e >= 1.0:
            return 1.0
        return (p_o - p_e) / (1.0 - p_e)

    n = m.n
    if n == 0:
        raise UndefinedAgreementError("agreement undefined over zero pairs")
    k = len(m.classes)
    if k == 1:
        return 1.0
    idx = np.arange(k, dtype=np.float64)
    weights = np.abs(idx[:, None] - idx[None, :]) / (k - 1)
    counts = m.counts.astype(np.float64)
    rows = counts.sum(axis=1)
    cols = counts.sum(axis=0)
    expected = np.outer(rows, cols) / n
    d_o = float((weights * counts).sum())
    d_e = float((weights * expected).sum())
    if d_e == 0.0:
        return 1.0
    return 1.0 - d_o / d_e


@dataclass(frozen=True)
class Discrepancy:
    item_id: str
    aspect: str
    label_a: str
    label_b: str
    kind: str = "label"  # "label" or "discard"


@dataclass
class PairedAnnotations:
    """Doubly-annotated items of two annotators, aligned per aspect."""

    annotator_a: str
    annotator_b: str
    pair_sets: dict[str, LabelPairSet]
    discrepancies: list[Discrepancy]
    no_overlap: bool

    def kappa_report(self) -> dict[str, dict]:
        """Per-aspect (n, p_o, p_e, kappa) over the paired labels."""
        report = {}
        for aspect in ("I", "D", "R", "B"):
            matrix = self.pair_sets[aspect].matrix()
            if matrix.n == 0:
                report[aspect] = {"n": 0, "p_o": None, "p_e": None, "kappa": None}
                continue
            p_o, p_e = observed_expected(matrix)
            report[aspect] = {
                "n": matrix.n,
                "p_o": p_o,
                "p_e": p_e,
                "kappa": cohen_kappa(matrix),
            }
        return report


def pair_annotations(
    ann_a: Iterable[SnippetAnnotation],
    ann_b: Iterable[SnippetAnnotation],
    annotator_a: str = "a",
    annotator_b: str = "b",
) -> PairedAnnotations:
    """Align two annotators' work over their common snippets."""
    by_id_a = {a.snippet_id: a for a in ann_a}
    by_id_b = {b.snippet_id: b for b in ann_b}
    overlap = sorted(set(by_id_a) & set(by_id_b))

    pair_sets = {aspect: LabelPairSet(aspect) for aspect in ("I", "D", "R", "B")}
    discrepancies: list[Discrepancy] = []

    for snippet_id in overlap:
        a, b = by_id_a[snippet_id], by_id_b[snippet_id]
        if a.discarded and b.discarded:
            continue  # agreed abstention: no pair, no discrepancy
        if a.discarded or b.discarded:
            discrepancies.append(
                Discrepancy(
                    item_id=snippet_id,
                    aspect="*",
                    label_a="<discarded>" if a.discarded else "<labeled>",
                    label_b="<discarded>" if b.discarded else "<labeled>",
                    kind="discard",
                )
            )
            continue
        assert a.attempt is not None and b.attempt is not None
        _collect(pair_sets, discrepancies, snippet_id, "I",
                 a.attempt.intention.value, b.attempt.intention.value)
        _collect(pair_sets, discrepancies, snippet_id, "D",
                 a.attempt.disclosure.value, b.attempt.disclosure.value)
        responses_b = {r.response_comment_id: r for r in b.responses}
        for ra in a.responses:
            rb = responses_b.get(ra.response_comment_id)
            if rb is None:
                continue
            item = f"{snippet_id}#{ra.response_comment_id}"
            _collect(pair_sets, discrepancies, item, "R",
                     ra.interpretation.value, rb.interpretation.value)
            _collect(pair_sets, discrepancies, item, "B",
                     ra.strategy.value, rb.strategy.value)

    return PairedAnnotations(
        annotator_a=annotator_a,
        annotator_b=annotator_b,
        pair_sets=pair_sets,
        discrepancies=discrepancies,
        no_overlap=not overlap,
    )


def _collect(
    pair_sets: dict[str, LabelPairSet],
    discrepancies: list[Discrepancy],
    item_id: str,
    aspect: str,
    label_a: str,
    label_b: str,
) -> None:
    pair_sets[aspect].pairs.append((label_a, label_b))
    if label_a != label_b:
        discrepancies.append(Discrepancy(item_id, aspect, label_a, label_b))


def discrepancies(
    ann_a: Iterable[SnippetAnnotation],
    ann_b: Iterable[SnippetAnnotation],
) -> list[Discrepancy]:
    """Exactly the disagreeing (item, aspect) pairs between two annotators."""
    return pair_annotations(ann_a, ann_b).discrepancies


def format_kappa_table(report: dict[str, dict], annotator_a: str, annotator_b: str) -> str:
    lines = [
        f"agreement between {annotator_a} and {annotator_b}",
        f"{'aspect':<8}{'n':>6}{'p_o':>10}{'p_e':>10}{'kappa':>10}",
    ]
    for aspect, row in report.items():
        if row["n"] == 0:
            lines.append(f"{aspect:<8}{0:>6}{'-':>10}{'-':>10}{'-':>10}")
        else:
            lines.append(
                f"{aspect:<8}{row['n']:>6}{row['p_o']:>10.4f}{row['p_e']:>10.4f}{row['kappa']:>10.4f}"
            )
    return "\n".join(lines)
