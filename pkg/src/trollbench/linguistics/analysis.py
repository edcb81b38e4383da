"""Deterministic built-in text analysis: sentences, tokens, lemmas, POS tags.

This replaces external linguistic toolchains with a rule pipeline that is
reproducible byte-for-byte; a sidecar annotation file, when supplied, wins
over every built-in layer so users can bring their own tokenization,
lemmas, tags and frame parses.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

# Common ASCII emoticons, matched before anything else so ":)" survives as
# one token.  Order matters: longer variants first.
_EMOTICON = (
    r"(?:>?[:;=8][\-o\*']?[\)\(\]\[dDpP/\\|@oO\*3](?![^\W\d_])"
    r"|<+/?3+"
    r"|\^_\^|-_-|o_O|O_o|o_o|T_T|;_;"
    r"|[xX][dD](?![^\W\d_])"
    r"|[\)\(\]\[dD/\\|][\-o\*']?[:;=8])"
)
_WORD = r"[^\W\d_]+(?:'[^\W\d_]+)*"
_NUMBER = r"\d+(?:[.,]\d+)*"
_TOKEN_RE = re.compile(f"({_EMOTICON})|({_WORD})|({_NUMBER})|(\\S)", re.UNICODE)

# Clitics split off their host word, longest suffix first.
_CLITICS = ("n't", "'ll", "'re", "'ve", "'m", "'s", "'d")

_SENTENCE_TERMINALS = {".", "!", "?"}

_LEMMA_EXCEPTIONS = {
    "am": "be", "are": "be", "is": "be", "was": "be", "were": "be",
    "been": "be", "being": "be",
    "has": "have", "had": "have", "having": "have",
    "does": "do", "did": "do", "done": "do",
    "goes": "go", "went": "go", "gone": "go",
    "said": "say", "says": "say",
    "made": "make", "got": "get", "gotten": "get",
    "n't": "not", "'ll": "will", "'re": "be", "'ve": "have", "'m": "be",
    "men": "man", "women": "woman", "children": "child", "people": "person",
    "mice": "mouse", "feet": "foot", "teeth": "tooth", "geese": "goose",
    "better": "good", "best": "good", "worse": "bad", "worst": "bad",
    "news": "news", "its": "its", "series": "series",
}

_POS_LEXICON = {
    "the": "DT", "a": "DT", "an": "DT", "this": "DT", "that": "DT",
    "these": "DT", "those": "DT", "some": "DT", "any": "DT", "no": "DT",
    "i": "PRP", "you": "PRP", "he": "PRP", "she": "PRP", "it": "PRP",
    "we": "PRP", "they": "PRP", "me": "PRP", "him": "PRP", "her": "PRP",
    "us": "PRP", "them": "PRP", "myself": "PRP", "yourself": "PRP",
    "my": "PRP$", "your": "PRP$", "his": "PRP$", "its": "PRP$",
    "our": "PRP$", "their": "PRP$",
    "am": "VBP", "are": "VBP", "is": "VBZ", "was": "VBD", "were": "VBD",
    "be": "VB", "been": "VBN", "being": "VBG",
    "do": "VBP", "does": "VBZ", "did": "VBD", "have": "VBP", "has": "VBZ",
    "had": "VBD", "'ve": "VBP", "'re": "VBP", "'m": "VBP",
    "will": "MD", "would": "MD", "can": "MD", "could": "MD", "may": "MD",
    "might": "MD", "shall": "MD", "should": "MD", "must": "MD", "'ll": "MD",
    "and": "CC", "or": "CC", "but": "CC", "nor": "CC",
    "in": "IN", "on": "IN", "at": "IN", "of": "IN", "to": "TO", "for": "IN",
    "with": "IN", "from": "IN", "by": "IN", "about": "IN", "into": "IN",
    "over": "IN", "under": "IN", "if": "IN", "because": "IN", "while": "IN",
    "not": "RB", "n't": "RB", "never": "RB", "always": "RB", "here": "RB",
    "there": "RB", "now": "RB", "then": "RB", "very": "RB", "too": "RB",
    "so": "RB", "just": "RB",
    "what": "WP", "who": "WP", "whom": "WP", "which": "WDT",
    "when": "WRB", "where": "WRB", "why": "WRB", "how": "WRB",
    "'s": "POS",
}

_ADJ_SUFFIXES = ("ous", "ful", "ive", "able", "ible", "al", "ic", "less", "ish")


@dataclass(frozen=True)
class Token:
    surface: str
    lowercase: str
    lemma: str
    pos_tag: str
    start: int
    end: int

    def is_word(self) -> bool:
        return any(ch.isalnum() for ch in self.surface)


@dataclass
class AnalyzedText:
    raw: str
    tokens: list[Token] = field(default_factory=list)
    # Half-open (start, end) token-index ranges, in order.
    sentences: list[tuple[int, int]] = field(default_factory=list)

    def words(self) -> list[Token]:
        return [t for t in self.tokens if t.is_word()]


def _split_clitics(surface: str, start: int) -> list[tuple[str, int, int]]:
    lower = surface.lower()
    for clitic in _CLITICS:
        if lower.endswith(clitic) and len(lower) > len(clitic):
            head_len = len(surface) - len(clitic)
            return _split_clitics(surface[:head_len], start) + [
                (surface[head_len:], start + head_len, start + len(surface))
            ]
    return [(surface, start, start + len(surface))]


def _raw_tokens(text: str) -> list[tuple[str, int, int]]:
    pieces: list[tuple[str, int, int]] = []
    for match in _TOKEN_RE.finditer(text):
        surface = match.group(0)
        if match.group(2):  # word: peel clitics off
            pieces.extend(_split_clitics(surface, match.start()))
        else:
            pieces.append((surface, match.start(), match.end()))
    return pieces


def lemmatize(lowercase: str) -> str:
    """Suffix-rule lemma with an exception table; never empty."""
    word = lowercase
    if not any(ch.isalpha() for ch in word):
        return word
    if word in _LEMMA_EXCEPTIONS:
        return _LEMMA_EXCEPTIONS[word]
    out = word
    if word.endswith("sses"):
        out = word[:-2]
    elif word.endswith("ies") and len(word) > 4:
        out = word[:-3] + "y"
    elif word.endswith(("xes", "ches", "shes", "zes")):
        out = word[:-2]
    elif word.endswith("s") and len(word) > 3 and not word.endswith(("ss", "us", "is")):
        out = word[:-1]
    elif word.endswith("ied") and len(word) > 4:
        out = word[:-3] + "y"
    elif word.endswith("ed") and len(word) > 4:
        out = _undouble(word[:-2])
    elif word.endswith("ing") and len(word) > 5:
        out = _undouble(word[:-3])
    return out or word


def _undouble(stem: str) -> str:
    if (
        len(stem) >= 3
        and stem[-1] == stem[-2]
        and stem[-1] not in "aeiou"
        and not stem.endswith(("ss", "ll", "zz"))
    ):
        return stem[:-1]
    return stem


def pos_tag(surface: str, lowercase: str, sentence_initial: bool) -> str:
    """Closed-class lexicon plus suffix heuristics; NN is the fallback."""
    if not any(ch.isalnum() for ch in surface):
        if surface in _SENTENCE_TERMINALS:
            return "."
        if surface == ",":
            return ","
        if all(not ch.isalnum() for ch in surface) and len(surface) > 1:
            return "EMO"
        return "SYM"
    if lowercase in _POS_LEXICON:
        return _POS_LEXICON[lowercase]
    if lowercase[0].isdigit():
        return "CD"
    if surface[0].isupper() and not sentence_initial:
        return "NNP"
    if lowercase.endswith("ly"):
        return "RB"
    if lowercase.endswith("ing") and len(lowercase) > 4:
        return "VBG"
    if lowercase.endswith("ed") and len(lowercase) > 3:
        return "VBD"
    if lowercase.endswith(_ADJ_SUFFIXES):
        return "JJ"
    if lowercase.endswith("s") and not lowercase.endswith(("ss", "us", "is")):
        return "NNS"
    return "NN"


def analyze(text: str) -> AnalyzedText:
    """Sentence-split, tokenize, lemmatize and tag ``text`` deterministically."""
    pieces = _raw_tokens(text)
    tokens: list[Token] = []
    sentences: list[tuple[int, int]] = []
    sentence_start = 0
    for k, (surface, start, end) in enumerate(pieces):
        sentence_initial = k == sentence_start
        lowercase = surface.lower()
        tokens.append(
            Token(
                surface=surface,
                lowercase=lowercase,
                lemma=lemmatize(lowercase),
                pos_tag=pos_tag(surface, lowercase, sentence_initial),
                start=start,
                end=end,
            )
        )
        at_terminal = surface in _SENTENCE_TERMINALS
        next_is_terminal = k + 1 < len(pieces) and pieces[k + 1][0] in _SENTENCE_TERMINALS
        if at_terminal and not next_is_terminal:
            sentences.append((sentence_start, k + 1))
            sentence_start = k + 1
    if sentence_start < len(tokens):
        sentences.append((sentence_start, len(tokens)))
    return AnalyzedText(raw=text, tokens=tokens, sentences=sentences)


@dataclass(frozen=True)
class FrameAnnotation:
    name: str
    target: str
    arguments: tuple[tuple[str, str], ...] = ()  # (argument name, token text)


@dataclass
class SidecarRecord:
    comment_id: str
    analyzed: AnalyzedText
    frames: tuple[FrameAnnotation, ...] = ()


class AnnotationSidecar:
    """External per-comment analyses that override the built-in pipeline."""

    def __init__(self, records: dict[str, SidecarRecord] | None = None) -> None:
        self.records = records or {}

    def __contains__(self, comment_id: str) -> bool:
        return comment_id in self.records

    def get(self, comment_id: str) -> Optional[SidecarRecord]:
        return self.records.get(comment_id)

    @classmethod
    def load(cls, path: str | Path) -> "AnnotationSidecar":
        records: dict[str, SidecarRecord] = {}
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                rec = json.loads(line)
                records[str(rec["comment_id"])] = _record_from_json(rec)
        return cls(records)


def _record_from_json(rec: dict) -> SidecarRecord:
    surfaces = [str(s) for s in rec.get("tokens", [])]
    lemmas = [str(s) for s in rec.get("lemmas", [])] or [s.lower() for s in surfaces]
    tags = [str(s) for s in rec.get("pos", [])] or ["NN"] * len(surfaces)
    if not (len(surfaces) == len(lemmas) == len(tags)):
        raise ValueError(f"sidecar record {rec.get('comment_id')}: layer lengths differ")
    raw = str(rec.get("raw", " ".join(surfaces)))
    tokens = []
    cursor = 0
    for surface, lemma, tag in zip(surfaces, lemmas, tags):
        start = raw.find(surface, cursor)
        if start < 0:
            start = cursor
        end = start + len(surface)
        cursor = end
        tokens.append(
            Token(
                surface=surface,
                lowercase=surface.lower(),
                lemma=lemma or surface.lower(),
                pos_tag=tag or "NN",
                start=start,
                end=end,
            )
        )
    sentences = [tuple(span) for span in rec.get("sentences", [])] or (
        [(0, len(tokens))] if tokens else []
    )
    frames = tuple(
        FrameAnnotation(
            name=str(f["name"]),
            target=str(f.get("target", "")),
            arguments=tuple((str(a["name"]), str(a["text"])) for a in f.get("arguments", [])),
        )
        for f in rec.get("frames", [])
    )
    return SidecarRecord(
        comment_id=str(rec["comment_id"]),
        analyzed=AnalyzedText(raw=raw, tokens=tokens, sentences=[(int(a), int(b)) for a, b in sentences]),
        frames=frames,
    )


class Analyzer:
    """Comment-level analysis with caching and sidecar override."""

    def __init__(self, sidecar: AnnotationSidecar | None = None) -> None:
        self.sidecar = sidecar or AnnotationSidecar()
        self._cache: dict[str, AnalyzedText] = {}

    def analyze_comment(self, comment_id: str, body: str) -> AnalyzedText:
        cached = self._cache.get(comment_id)
        if cached is not None:
            return cached
        record = self.sidecar.get(comment_id)
        result = record.analyzed if record is not None else analyze(body)
        self._cache[comment_id] = result
        return result

    def frames_for(self, comment_id: str) -> tuple[FrameAnnotation, ...]:
        record = self.sidecar.get(comment_id)
        return record.frames if record is not None else ()
