from __future__ import annotations

import json

import numpy as np
import pytest

from trollbench.corpus import Snippet
from trollbench.features import (
    GROUPS,
    FeatureError,
    FeatureKey,
    FeatureSpace,
    Instance,
    Resources,
    build_space,
    featurize,
    group_features,
    load_dataset,
    save_dataset,
    to_matrix,
)
from trollbench.linguistics import AnnotationSidecar, Analyzer, EmbeddingTable

from .conftest import make_comment


_SID_COUNTER = iter(range(10_000))


def snippet_of(attempt_body: str, response_bodies=("you troll",), attempt_author="user",
               context_body: str | None = "context text", sid: str | None = None):
    # comment ids key the per-comment feature cache, so every fixture snippet
    # gets a fresh id unless the test pins one
    sid = sid if sid is not None else f"s{next(_SID_COUNTER)}"
    attempt = make_comment("att_" + sid, parent="ctx_" + sid, body=attempt_body,
                           author=attempt_author, created=1)
    responses = tuple(
        make_comment(f"r{k}_{sid}", parent="att_" + sid, body=body, created=2 + k)
        for k, body in enumerate(response_bodies)
    )
    context = (
        make_comment("ctx_" + sid, body=context_body, created=0) if context_body else None
    )
    return Snippet(snippet_id=sid, thread_id="t1", context=context, attempt=attempt, responses=responses)


@pytest.fixture()
def resources():
    return Resources(embeddings=EmbeddingTable.deterministic(
        ["stupid", "people", "you", "troll", "context", "text"], dimension=4
    ))


class TestGroupFeatures:
    def test_pol_always_four_real_features(self, resources):
        snippet = snippet_of("whatever text")
        space = FeatureSpace(task="I", groups=("pol",))
        vec = featurize(snippet, "I", None, space, ("pol",), resources)
        assert space.sparse_size == 4
        assert len(vec.sparse) == 4
        names = {space.feature_name(i) for i, _ in vec.sparse}
        assert names == {"pol:positive", "pol:neutral", "pol:negative", "pol:compound"}

    def test_emt_all_zero_without_emoticon(self, resources):
        snippet = snippet_of("no emoticon in sight")
        space = FeatureSpace(task="I", groups=("emt",))
        vec = featurize(snippet, "I", None, space, ("emt",), resources)
        assert vec.sparse == []

    def test_ngr_stupid_people_key_count(self, resources):
        # 2 unigrams + 1 bigram, x (surface, lemma, POS-appended) = 9 keys
        snippet = snippet_of("stupid people")
        space = FeatureSpace(task="I", groups=("ngr",))
        vec = featurize(snippet, "I", None, space, ("ngr",), resources)
        assert space.sparse_size == 9
        assert all(value == 1.0 for _, value in vec.sparse)
        names = {space.feature_name(i) for i, _ in vec.sparse}
        assert "ngr:uni:stupid" in names
        assert "ngr:bi:stupid people" in names
        assert "ngr:uni_lem:person" in names  # lemma variant differs from surface

    def test_binary_groups_emit_unit_values(self, resources):
        snippet = snippet_of("damn this :) anger please", response_bodies=("kill the troll",))
        space = FeatureSpace(task="I", groups=("emt", "hrm", "syn", "swr", "cue"))
        vec = featurize(snippet, "I", None, space, ("emt", "hrm", "syn", "swr", "cue"), resources)
        assert {v for _, v in vec.sparse} == {1.0}
        names = {space.feature_name(i) for i, _ in vec.sparse}
        assert names == {"emt:present", "swr:present", "syn:present", "cue:present"}

    def test_usr_flags_swearing_usernames(self, resources):
        flagged = snippet_of("hello", attempt_author="xXshitlordXx")
        clean = snippet_of("hello", attempt_author="friendly_fred")
        assert group_features(flagged.attempt, "usr", resources) == [("swear_in_username", 1.0)]
        assert group_features(clean.attempt, "usr", resources) == []

    def test_usr_uses_the_source_comment_author(self, resources):
        snippet = snippet_of("hello", response_bodies=("you troll",), attempt_author="dumbass99")
        space_i = FeatureSpace(task="I", groups=("usr",))
        vec_i = featurize(snippet, "I", None, space_i, ("usr",), resources)
        assert len(vec_i.sparse) == 1  # troll's name for intention
        space_b = FeatureSpace(task="B", groups=("usr",))
        vec_b = featurize(snippet, "B", 0, space_b, ("usr",), resources)
        assert vec_b.sparse == []  # responder has a clean name

    def test_frm_empty_without_sidecar(self, resources):
        snippet = snippet_of("anything")
        space = FeatureSpace(task="I", groups=("frm",))
        vec = featurize(snippet, "I", None, space, ("frm",), resources)
        assert vec.sparse == [] and space.sparse_size == 0

    def test_frm_from_sidecar(self, tmp_path):
        sidecar_path = tmp_path / "frames.jsonl"
        sidecar_path.write_text(
            json.dumps(
                {
                    "comment_id": "att_s1",
                    "raw": "stupid people",
                    "tokens": ["stupid", "people"],
                    "frames": [
                        {"name": "Judgment", "target": "stupid",
                         "arguments": [{"name": "Evaluee", "text": "people"}]}
                    ],
                }
            )
            + "\n"
        )
        resources = Resources(analyzer=Analyzer(AnnotationSidecar.load(sidecar_path)))
        snippet = snippet_of("stupid people", sid="s1")
        space = FeatureSpace(task="I", groups=("frm",))
        vec = featurize(snippet, "I", None, space, ("frm",), resources)
        names = {space.feature_name(i) for i, _ in vec.sparse}
        assert names == {
            "frm:frame:Judgment",
            "frm:target:Judgment:stupid",
            "frm:arg:Evaluee:people",
        }

    def test_glv_dense_block(self, resources):
        snippet = snippet_of("stupid people")
        space = FeatureSpace(task="I", groups=("glv",))
        vec = featurize(snippet, "I", None, space, ("glv",), resources)
        assert vec.sparse == []
        assert len(vec.dense) == 4
        expected = (
            resources.embeddings.vectors["stupid"] + resources.embeddings.vectors["people"]
        ) / 2
        assert np.allclose(vec.dense, expected)

    def test_glv_without_table_is_an_error(self):
        snippet = snippet_of("stupid people")
        space = FeatureSpace(task="I", groups=("glv",))
        with pytest.raises(FeatureError):
            featurize(snippet, "I", None, space, ("glv",), Resources())

    def test_tasks_pick_their_source_comment(self, resources):
        snippet = snippet_of("stupid people", response_bodies=("you troll", "another reply"))
        space_i = FeatureSpace(task="I", groups=("ngr",))
        vec_i = featurize(snippet, "I", None, space_i, ("ngr",), resources)
        names_i = {space_i.feature_name(i) for i, _ in vec_i.sparse}
        assert "ngr:uni:stupid" in names_i

        space_r = FeatureSpace(task="R", groups=("ngr",))
        vec_r = featurize(snippet, "R", 1, space_r, ("ngr",), resources)
        names_r = {space_r.feature_name(i) for i, _ in vec_r.sparse}
        assert "ngr:uni:another" in names_r and "ngr:uni:stupid" not in names_r

    def test_response_tasks_require_index(self, resources):
        snippet = snippet_of("hello")
        space = FeatureSpace(task="B", groups=("ngr",))
        with pytest.raises(FeatureError):
            featurize(snippet, "B", None, space, ("ngr",), resources)


class TestFeatureSpace:
    def instances(self, *bodies):
        return [Instance(snippet_of(body), None, "L") for body in bodies]

    def test_empty_training_set_rejected(self, resources):
        with pytest.raises(FeatureError):
            build_space([], "I", ("ngr",), resources)

    def test_empty_group_set_gives_zero_width(self, resources):
        space, vectors = build_space(self.instances("aa bb"), "I", (), resources)
        assert space.width == 0
        assert vectors[0].sparse == [] and len(vectors[0].dense) == 0

    def test_glv_only_space_is_embedding_width(self, resources):
        space, _ = build_space(self.instances("stupid people"), "I", ("glv",), resources)
        assert space.sparse_size == 0
        assert space.width == resources.embeddings.dimension

    def test_aa_bb_deterministic_key_count(self, resources):
        space1, _ = build_space(self.instances("aa bb"), "I", ("ngr",), resources)
        space2, _ = build_space(self.instances("aa bb"), "I", ("ngr",), resources)
        assert space1.sparse_size == space2.sparse_size == 9
        assert list(space1.key_index) == list(space2.key_index)

    def test_disjoint_training_sets_share_only_common_vocabulary(self, resources):
        space_a, _ = build_space(self.instances("aa bb", "cc aa"), "I", ("ngr",), resources)
        space_b, _ = build_space(self.instances("dd ee", "ff dd"), "I", ("ngr",), resources)
        keys_a = set(space_a.key_index)
        keys_b = set(space_b.key_index)
        assert keys_a.isdisjoint(keys_b)

    def test_frozen_space_drops_unknown_keys(self, resources):
        space, _ = build_space(self.instances("aa bb"), "I", ("ngr",), resources)
        size = space.sparse_size
        novel = snippet_of("zz qq totally new words", sid="s9")
        vec = featurize(novel, "I", None, space, ("ngr",), resources)
        assert space.sparse_size == size  # leakage guard
        assert vec.sparse == []

    def test_monotone_ablation_identity(self, resources):
        body = "damn stupid people please :)"
        g1 = ("swr", "cue")
        g2 = ("ngr", "pol", "emt")
        snippet = snippet_of(body)
        inst = [Instance(snippet, None, "L")]
        space_union, _ = build_space(inst, "I", g1 + g2, resources)
        space_g1, _ = build_space(inst, "I", g1, resources)
        vec_union = featurize(snippet, "I", None, space_union, g1 + g2, resources)
        vec_g1 = featurize(snippet, "I", None, space_g1, g1, resources)

        union_by_key = {
            space_union._reverse()[i]: v for i, v in vec_union.sparse
        }
        g1_by_key = {space_g1._reverse()[i]: v for i, v in vec_g1.sparse}
        restricted = {k: v for k, v in union_by_key.items() if k.group in g1}
        assert restricted == g1_by_key

    def test_featurize_deterministic(self, resources):
        snippet = snippet_of("damn stupid people please :)")
        space, _ = build_space([Instance(snippet, None, "L")], "I", GROUPS, resources)
        v1 = featurize(snippet, "I", None, space, GROUPS, resources)
        v2 = featurize(snippet, "I", None, space, GROUPS, resources)
        assert v1.sparse == v2.sparse
        assert np.array_equal(v1.dense, v2.dense)

    def test_extras_prefix_context_features(self, resources):
        snippet = snippet_of("stupid people", context_body="context text")
        inst = [Instance(snippet, None, "L")]
        space, vectors = build_space(inst, "I", ("ngr",), resources, extras=("context",))
        names = {space.feature_name(i) for i, _ in vectors[0].sparse}
        assert "ngr:context:uni:context" in names
        assert "ngr:uni:stupid" in names
        # dense widens per extra source when glv is on
        space_glv, vecs_glv = build_space(inst, "I", ("glv",), resources, extras=("context",))
        assert space_glv.width == 2 * resources.embeddings.dimension


class TestDatasetFile:
    def test_roundtrip(self, tmp_path, resources):
        snippets = [snippet_of("stupid people", sid="a"), snippet_of("damn you :)", sid="b")]
        instances = [Instance(s, None, lab) for s, lab in zip(snippets, ["X", "Y"])]
        space, vectors = build_space(instances, "I", ("ngr", "pol", "glv"), resources)
        path = tmp_path / "data.jsonl"
        save_dataset(path, space, [i.label for i in instances], vectors)
        header, labels, loaded = load_dataset(path)
        assert header["task"] == "I"
        assert header["space_size"] == space.sparse_size
        assert header["dense_width"] == space.dense_width
        assert labels == ["X", "Y"]
        assert loaded[0].sparse == vectors[0].sparse
        assert np.allclose(loaded[1].dense, vectors[1].dense)

    def test_to_matrix_layout(self, resources):
        snippets = [snippet_of("stupid people", sid="a")]
        instances = [Instance(snippets[0], None, "X")]
        space, vectors = build_space(instances, "I", ("ngr", "glv"), resources)
        m = to_matrix(vectors, space)
        assert m.shape == (1, space.width)
        dense_part = m.toarray()[0, space.sparse_size:]
        assert np.allclose(dense_part, vectors[0].dense)

    def test_dataset_file_feeds_the_model(self, tmp_path, resources):
        from trollbench.features import dataset_matrix
        from trollbench.model import accuracy, train

        snippets, labels = [], []
        for k in range(10):
            body = "damn awful rant" if k % 2 == 0 else "calm kind note"
            snippets.append(snippet_of(f"{body} tail{k}"))
            labels.append("hot" if k % 2 == 0 else "mild")
        instances = [Instance(s, None, lab) for s, lab in zip(snippets, labels)]
        space, vectors = build_space(instances, "I", ("ngr", "swr", "glv"), resources)
        path = tmp_path / "train.jsonl"
        save_dataset(path, space, labels, vectors)

        header, loaded_labels, loaded_vectors = load_dataset(path)
        x = dataset_matrix(header, loaded_vectors)
        assert x.shape == (10, space.width)
        model = train(x, loaded_labels, lam=1e-3)
        assert accuracy(model, x, loaded_labels) == 1.0
