"""Feature extraction: ten groups assembled into sparse+dense vectors.

Groups (Table-2 style short ids):

  ngr  binary n-grams: lowercase and lemmatized unigrams/bigrams, plus the
       lowercase n-grams POS-appended per token
  pol  four real sentiment values (positive, neutral, negative, compound)
  emt  emoticon presence            hrm  harmful-vocabulary presence
  syn  emotion-wordlist presence    swr  swearing-vocabulary presence
  cue  politeness-cue presence      usr  swear word inside the author name
  frm  frame-annotation features from a sidecar file (absent sidecar: none)
  glv  dense averaged word-embedding block, appended after all sparse columns

Intention and disclosure featurize the suspected attempt; interpretation
and strategy featurize the addressed response.  Optional extras concatenate
context/attempt features under distinct key prefixes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import sparse as sp

from .corpus import Comment, Snippet
from .linguistics.analysis import Analyzer
from .linguistics.embeddings import EmbeddingTable, embed_average
from .linguistics.lexicons import Lexicon, lexicon_hit, load_lexicons
from .linguistics.sentiment import default_valence_lexicon, sentiment

GROUPS = ("ngr", "pol", "emt", "hrm", "syn", "swr", "usr", "frm", "cue", "glv")

TASKS = ("I", "D", "R", "B")

# Which lexicon backs each one-flag group.
_LEXICON_GROUPS = {"emt": "emoticons", "hrm": "harmful", "syn": "emotion", "swr": "swear", "cue": "politeness"}

NGRAM_VARIANTS = ("uni", "bi", "uni_lem", "bi_lem", "uni_pos", "bi_pos")


class FeatureError(ValueError):
    pass


@dataclass(frozen=True)
class FeatureKey:
    group: str
    name: str


@dataclass
class Resources:
    """Shared, immutable-after-load inputs for featurization."""

    analyzer: Analyzer = field(default_factory=Analyzer)
    lexicons: dict[str, Lexicon] = field(default_factory=load_lexicons)
    embeddings: Optional[EmbeddingTable] = None
    valence: dict[str, float] = field(default_factory=default_valence_lexicon)
    _group_cache: dict[tuple[str, str], list[tuple[str, float]]] = field(default_factory=dict)
    _swears: Optional[frozenset[str]] = None

    def swear_words(self) -> frozenset[str]:
        if self._swears is None:
            self._swears = frozenset(e[0] for e in self.lexicons["swear"].entries if len(e) == 1)
        return self._swears


@dataclass
class FeatureSpace:
    task: str
    groups: tuple[str, ...]
    key_index: dict[FeatureKey, int] = field(default_factory=dict)
    dense_width: int = 0
    frozen: bool = False
    extras: tuple[str, ...] = ()

    @property
    def sparse_size(self) -> int:
        return len(self.key_index)

    @property
    def width(self) -> int:
        return self.sparse_size + self.dense_width

    def index_of(self, key: FeatureKey) -> Optional[int]:
        """Index for ``key``; unseen keys grow an unfrozen space, else drop."""
        idx = self.key_index.get(key)
        if idx is None and not self.frozen:
            idx = len(self.key_index)
            self.key_index[key] = idx
        return idx

    def freeze(self) -> "FeatureSpace":
        self.frozen = True
        return self

    def feature_name(self, index: int) -> str:
        if index >= self.sparse_size:
            return f"glv:dim_{index - self.sparse_size}"
        key = self._reverse()[index]
        return f"{key.group}:{key.name}"

    def _reverse(self) -> dict[int, FeatureKey]:
        cached = self.__dict__.get("_reverse_cache")
        if cached is None or len(cached) != len(self.key_index):
            cached = {idx: key for key, idx in self.key_index.items()}
            self.__dict__["_reverse_cache"] = cached
        return cached


@dataclass
class FeatureVector:
    sparse: list[tuple[int, float]]  # sorted by index, no duplicates
    dense: np.ndarray

    def to_record(self) -> dict:
        return {"sparse": [[i, v] for i, v in self.sparse], "dense": [float(x) for x in self.dense]}

    @classmethod
    def from_record(cls, rec: dict) -> "FeatureVector":
        return cls(
            sparse=[(int(i), float(v)) for i, v in rec["sparse"]],
            dense=np.asarray(rec["dense"], dtype=np.float64),
        )


def _ngram_features(comment: Comment, resources: Resources) -> list[tuple[str, float]]:
    analyzed = resources.analyzer.analyze_comment(comment.id, comment.body)
    tokens = analyzed.tokens
    lows = [t.lowercase for t in tokens]
    lems = [t.lemma for t in tokens]
    tags = [t.pos_tag for t in tokens]
    names: set[str] = set()
    for k, low in enumerate(lows):
        names.add(f"uni:{low}")
        names.add(f"uni_lem:{lems[k]}")
        names.add(f"uni_pos:{low}_{tags[k]}")
        if k + 1 < len(lows):
            names.add(f"bi:{low} {lows[k + 1]}")
            names.add(f"bi_lem:{lems[k]} {lems[k + 1]}")
            names.add(f"bi_pos:{low}_{tags[k]} {lows[k + 1]}_{tags[k + 1]}")
    return [(name, 1.0) for name in sorted(names)]


def _sentiment_features(comment: Comment, resources: Resources) -> list[tuple[str, float]]:
    analyzed = resources.analyzer.analyze_comment(comment.id, comment.body)
    scores = sentiment(analyzed, resources.valence)
    return [
        ("positive", scores.positive),
        ("neutral", scores.neutral),
        ("negative", scores.negative),
        ("compound", scores.compound),
    ]


def _username_swear(comment: Comment, swears: frozenset[str]) -> bool:
    username = comment.author_username.lower()
    if not username:
        return False
    runs = [r for r in _split_letter_runs(username) if r]
    if any(run in swears for run in runs):
        return True
    return any(len(word) >= 4 and word in username for word in swears)


def _split_letter_runs(text: str) -> list[str]:
    runs, current = [], []
    for ch in text:
        if ch.isalpha():
            current.append(ch)
        elif current:
            runs.append("".join(current))
            current = []
    if current:
        runs.append("".join(current))
    return runs


def _frame_features(comment: Comment, resources: Resources) -> list[tuple[str, float]]:
    names: set[str] = set()
    for frame in resources.analyzer.frames_for(comment.id):
        names.add(f"frame:{frame.name}")
        if frame.target:
            names.add(f"target:{frame.name}:{frame.target}")
        for arg_name, arg_text in frame.arguments:
            names.add(f"arg:{arg_name}:{arg_text}")
    return [(name, 1.0) for name in sorted(names)]


def group_features(
    comment: Comment, group: str, resources: Resources
) -> list[tuple[str, float]]:
    """(name, value) pairs for one group on one comment, cached per comment."""
    cache_key = (comment.id, group)
    cached = resources._group_cache.get(cache_key)
    if cached is not None:
        return cached
    if group == "ngr":
        result = _ngram_features(comment, resources)
    elif group == "pol":
        result = _sentiment_features(comment, resources)
    elif group in _LEXICON_GROUPS:
        lexicon = resources.lexicons[_LEXICON_GROUPS[group]]
        analyzed = resources.analyzer.analyze_comment(comment.id, comment.body)
        result = [("present", 1.0)] if lexicon_hit(lexicon, analyzed) else []
    elif group == "usr":
        result = [("swear_in_username", 1.0)] if _username_swear(comment, resources.swear_words()) else []
    elif group == "frm":
        result = _frame_features(comment, resources)
    elif group == "glv":
        result = []  # dense block, handled separately
    else:
        raise FeatureError(f"unknown feature group: {group}")
    resources._group_cache[cache_key] = result
    return result


def _source_comment(snippet: Snippet, task: str, response_index: Optional[int]) -> Comment:
    if task in ("I", "D"):
        return snippet.attempt
    if response_index is None:
        raise FeatureError(f"task {task} requires a response_index")
    return snippet.responses[response_index]


def _extra_comment(snippet: Snippet, extra: str) -> Optional[Comment]:
    if extra == "context":
        return snippet.context
    if extra == "attempt":
        return snippet.attempt
    raise FeatureError(f"unknown extra source: {extra}")


def featurize(
    snippet: Snippet,
    task: str,
    response_index: Optional[int],
    space: FeatureSpace,
    groups: Iterable[str],
    resources: Resources,
) -> FeatureVector:
    """Concatenate the selected groups for one (snippet, target) instance.

    With a frozen space, unseen keys are dropped (test-time OOV contract);
    an unfrozen space grows to accommodate them.
    """
    if task not in TASKS:
        raise FeatureError(f"unknown task: {task}")
    group_set = tuple(g for g in GROUPS if g in set(groups))
    source = _source_comment(snippet, task, response_index)
    comments: list[tuple[str, Comment]] = [("", source)]
    for extra in space.extras:
        extra_comment = _extra_comment(snippet, extra)
        if extra_comment is not None:
            comments.append((f"{extra}:", extra_comment))

    entries: dict[int, float] = {}
    for group in group_set:
        if group == "glv":
            continue
        for prefix, comment in comments:
            for name, value in group_features(comment, group, resources):
                idx = space.index_of(FeatureKey(group, prefix + name))
                if idx is not None:
                    entries[idx] = value

    dense_segments: list[np.ndarray] = []
    if "glv" in group_set:
        if resources.embeddings is None:
            raise FeatureError("glv group selected but no embedding table loaded")
        table = resources.embeddings
        for extra in ("",) + space.extras:
            if extra == "":
                comment: Optional[Comment] = source
            else:
                comment = _extra_comment(snippet, extra)
            if comment is None:
                dense_segments.append(np.zeros(table.dimension))
            else:
                analyzed = resources.analyzer.analyze_comment(comment.id, comment.body)
                dense_segments.append(embed_average(table, analyzed))
    dense = np.concatenate(dense_segments) if dense_segments else np.zeros(0)
    if not space.frozen:
        space.dense_width = max(space.dense_width, len(dense))

    return FeatureVector(sparse=sorted(entries.items()), dense=dense)


@dataclass(frozen=True)
class Instance:
    snippet: Snippet
    response_index: Optional[int]  # None for attempt-level tasks
    label: str

    @property
    def instance_id(self) -> str:
        if self.response_index is None:
            return self.snippet.snippet_id
        return f"{self.snippet.snippet_id}#{self.snippet.responses[self.response_index].id}"


def build_space(
    instances: Sequence[Instance],
    task: str,
    groups: Iterable[str],
    resources: Resources,
    extras: tuple[str, ...] = (),
) -> tuple[FeatureSpace, list[FeatureVector]]:
    """Grow a space over training instances only, then freeze it.

    Returns the frozen space together with the training vectors (featurizing
    is the expensive part, so callers keep both).
    """
    if not instances:
        raise FeatureError("cannot build a feature space from an empty training set")
    space = FeatureSpace(task=task, groups=tuple(g for g in GROUPS if g in set(groups)), extras=extras)
    vectors = [
        featurize(inst.snippet, task, inst.response_index, space, space.groups, resources)
        for inst in instances
    ]
    space.freeze()
    return space, vectors


def to_matrix(vectors: Sequence[FeatureVector], space: FeatureSpace) -> sp.csr_matrix:
    """CSR design matrix: sparse columns first, dense block appended."""
    return dataset_matrix(
        {"space_size": space.sparse_size, "dense_width": space.dense_width}, vectors
    )


def save_dataset(
    path: str | Path,
    space: FeatureSpace,
    labels: Sequence[str],
    vectors: Sequence[FeatureVector],
) -> None:
    """Header (space shape, task, groups) plus one record per instance."""
    if len(labels) != len(vectors):
        raise FeatureError("labels and vectors differ in length")
    header = {
        "space_size": space.sparse_size,
        "dense_width": space.dense_width,
        "task": space.task,
        "groups": list(space.groups),
        "extras": list(space.extras),
        "ngram_variants": list(NGRAM_VARIANTS),
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header) + "\n")
        for label, vec in zip(labels, vectors):
            fh.write(json.dumps({"label": label, **vec.to_record()}) + "\n")


def load_dataset(path: str | Path) -> tuple[dict, list[str], list[FeatureVector]]:
    with open(path, encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        labels, vectors = [], []
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            labels.append(str(rec["label"]))
            vectors.append(FeatureVector.from_record(rec))
    return header, labels, vectors


def dataset_matrix(header: dict, vectors: Sequence[FeatureVector]) -> sp.csr_matrix:
    """Design matrix for a loaded dataset file, ready for model training."""
    width = int(header["space_size"]) + int(header["dense_width"])
    offset = int(header["space_size"])
    rows: list[int] = []
    cols: list[int] = []
    data: list[float] = []
    for r, vec in enumerate(vectors):
        for idx, value in vec.sparse:
            if value != 0.0:
                rows.append(r)
                cols.append(idx)
                data.append(value)
        for d, value in enumerate(vec.dense):
            if value != 0.0:
                rows.append(r)
                cols.append(offset + d)
                data.append(float(value))
    return sp.csr_matrix((data, (rows, cols)), shape=(len(vectors), width), dtype=np.float64)
