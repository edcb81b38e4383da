from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from trollbench.agreement import (
    ConfusionMatrix,
    UndefinedAgreementError,
    cohen_kappa,
    discrepancies,
    format_kappa_table,
    observed_expected,
    pair_annotations,
)
from trollbench.schema import (
    AttemptLabel,
    Disclosure,
    Intention,
    Interpretation,
    ResponseLabel,
    SnippetAnnotation,
    Strategy,
)

I, D, R, B = Intention, Disclosure, Interpretation, Strategy


def matrix(rows, classes=None):
    counts = np.asarray(rows, dtype=np.int64)
    classes = classes or [f"c{k}" for k in range(counts.shape[0])]
    return ConfusionMatrix(classes=classes, counts=counts)


class TestCohenKappa:
    def test_perfect_agreement_is_exactly_one(self):
        assert cohen_kappa(matrix([[7, 0], [0, 3]])) == 1.0
        assert cohen_kappa(matrix([[5]])) == 1.0  # p_e = 1 edge case
        assert cohen_kappa(matrix([[2, 0, 0], [0, 9, 0], [0, 0, 4]])) == 1.0

    def test_hand_worked_two_by_two(self):
        # p_o = 35/50 = 0.70, p_e = (25*30 + 25*20)/2500 = 0.50, kappa = 0.40
        m = matrix([[20, 5], [10, 15]])
        p_o, p_e = observed_expected(m)
        assert p_o == pytest.approx(0.70, abs=1e-12)
        assert p_e == pytest.approx(0.50, abs=1e-12)
        assert cohen_kappa(m) == pytest.approx(0.40, abs=1e-12)

    def test_chance_level_structure_is_zero(self):
        # entries proportional to products of identical marginals
        marginal = np.array([4, 6, 10], dtype=np.float64)
        counts = np.outer(marginal, marginal)  # n = 400, p_o = p_e
        m = ConfusionMatrix(classes=["x", "y", "z"], counts=counts.astype(np.int64))
        assert cohen_kappa(m) == pytest.approx(0.0, abs=1e-9)

    def test_empty_matrix_rejected(self):
        with pytest.raises(UndefinedAgreementError):
            cohen_kappa(matrix([[0, 0], [0, 0]]))

    def test_permutation_invariance(self):
        rng = np.random.default_rng(5)
        counts = rng.integers(0, 9, size=(4, 4))
        counts[0, 0] += 1  # nonempty
        base = cohen_kappa(matrix(counts.tolist()))
        for _ in range(10):
            perm = rng.permutation(4)
            permuted = counts[np.ix_(perm, perm)]
            assert cohen_kappa(matrix(permuted.tolist())) == pytest.approx(base, abs=1e-12)

    @given(
        arrays(np.int64, (3, 3), elements=st.integers(0, 20)),
        st.integers(0, 2),
    )
    @settings(max_examples=300, deadline=None)
    def test_agreeing_pair_never_decreases_kappa(self, counts, diag):
        if counts.sum() == 0:
            counts[1][1] = 1
        m = matrix(counts.tolist())
        _, p_e = observed_expected(m)
        if p_e >= 1.0:
            return
        before = cohen_kappa(m)
        bumped = counts.copy()
        bumped[diag][diag] += 1
        after = cohen_kappa(matrix(bumped.tolist()))
        assert after >= before - 1e-12

    def test_weighted_variant_on_nominal_diagonal(self):
        m = matrix([[5, 0], [0, 5]])
        assert cohen_kappa(m, weighted=True) == 1.0
        off = matrix([[0, 5], [5, 0]])
        assert cohen_kappa(off, weighted=True) < 0.0


def ann(snippet, annotator, i=I.TROLLING, d=D.EXPOSED, responses=(("r1", R.TROLLING, B.TROLL),),
        discarded=False):
    if discarded:
        return SnippetAnnotation(snippet, annotator, True, None, ())
    return SnippetAnnotation(
        snippet,
        annotator,
        False,
        AttemptLabel(i, d),
        tuple(ResponseLabel(rid, r, b) for rid, r, b in responses),
    )


class TestPairing:
    def test_identical_files_no_discrepancies(self):
        a = [ann("s1", "a"), ann("s2", "a", i=I.NO_TROLLING, d=D.NONE)]
        b = [ann("s1", "b"), ann("s2", "b", i=I.NO_TROLLING, d=D.NONE)]
        assert discrepancies(a, b) == []
        paired = pair_annotations(a, b)
        report = paired.kappa_report()
        assert report["I"]["n"] == 2
        assert report["I"]["kappa"] == 1.0

    def test_single_strategy_disagreement(self):
        a = [ann("s1", "a", responses=(("r1", R.TROLLING, B.ENGAGE),))]
        b = [ann("s1", "b", responses=(("r1", R.TROLLING, B.TROLL),))]
        found = discrepancies(a, b)
        assert len(found) == 1
        assert found[0].aspect == "B"
        assert (found[0].label_a, found[0].label_b) == ("Engage", "Troll")
        assert found[0].item_id == "s1#r1"

    def test_discard_mismatch_listed_and_excluded_from_kappa(self):
        a = [ann("s1", "a"), ann("s2", "a")]
        b = [ann("s1", "b"), ann("s2", "b", discarded=True)]
        paired = pair_annotations(a, b)
        kinds = [d.kind for d in paired.discrepancies]
        assert kinds == ["discard"]
        assert paired.kappa_report()["I"]["n"] == 1  # only s1 paired

    def test_both_discarded_is_agreed_abstention(self):
        a = [ann("s1", "a", discarded=True)]
        b = [ann("s1", "b", discarded=True)]
        paired = pair_annotations(a, b)
        assert paired.discrepancies == []
        assert paired.kappa_report()["I"]["n"] == 0

    def test_no_overlap_flagged(self):
        paired = pair_annotations([ann("s1", "a")], [ann("s2", "b")])
        assert paired.no_overlap
        assert paired.discrepancies == []

    def test_empty_diagonal_matrix_iff_no_discrepancies(self):
        a = [ann(f"s{k}", "a", responses=(("r1", R.NO_TROLLING, B.NORMAL),)) for k in range(4)]
        b = [ann(f"s{k}", "b", responses=(("r1", R.NO_TROLLING, B.NORMAL),)) for k in range(4)]
        paired = pair_annotations(a, b)
        assert paired.discrepancies == []
        for aspect in "IDRB":
            m = paired.pair_sets[aspect].matrix()
            assert np.trace(m.counts) == m.n

    def test_kappa_table_formatting(self):
        a = [ann("s1", "a")]
        b = [ann("s1", "b")]
        table = format_kappa_table(pair_annotations(a, b).kappa_report(), "a", "b")
        assert "aspect" in table and "kappa" in table
        assert len(table.splitlines()) == 6  # title + header + four aspects
