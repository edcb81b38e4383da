"""Wordlist resources: emoticons, harmful vocabulary, emotion synonym sets,
swearing vocabulary and politeness cues.

File format: one entry per line, '#' starts a comment, multi-word lines are
contiguous token phrases.  Every lexicon is lowercase-normalized except the
emoticon list, which matches surface tokens case-sensitively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Literal

from .analysis import AnalyzedText, analyze, lemmatize

LEXICON_NAMES = ("emoticons", "harmful", "emotion", "swear", "politeness")

MatchField = Literal["surface", "lowercase", "lemma"]

# Which token layer each lexicon matches against.
DEFAULT_FIELDS: dict[str, MatchField] = {
    "emoticons": "surface",
    "harmful": "lowercase",
    "emotion": "lemma",
    "swear": "lowercase",
    "politeness": "lowercase",
}


@dataclass
class Lexicon:
    name: str
    entries: frozenset[tuple[str, ...]]  # each entry is a token phrase
    source: str = ""
    case_sensitive: bool = False
    _max_len: int = field(init=False, default=1)

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError(f"lexicon {self.name!r} is empty")
        self._max_len = max(len(e) for e in self.entries)

    @classmethod
    def from_phrases(
        cls,
        name: str,
        phrases: Iterable[str],
        source: str = "",
        case_sensitive: bool = False,
        lemmatize_entries: bool = False,
    ) -> "Lexicon":
        entries = set()
        for phrase in phrases:
            phrase = phrase.strip()
            if not phrase:
                continue
            if case_sensitive:
                entries.add(tuple(phrase.split()))
                continue
            # run entries through the same tokenizer the comments go through,
            # so "you're welcome" matches the token stream [you, 're, welcome]
            tokens = [t.lowercase for t in analyze(phrase.lower()).tokens]
            if lemmatize_entries:
                tokens = [lemmatize(t) for t in tokens]
            if tokens:
                entries.add(tuple(tokens))
        return cls(name=name, entries=frozenset(entries), source=source, case_sensitive=case_sensitive)

    @classmethod
    def load(cls, name: str, path: str | Path) -> "Lexicon":
        case_sensitive = name == "emoticons"
        phrases = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if not case_sensitive:
                    line = line.split("#", 1)[0]
                elif line.startswith("#"):
                    continue  # emoticon entries may themselves contain '#'
                if line.strip():
                    phrases.append(line.strip())
        return cls.from_phrases(
            name,
            phrases,
            source=str(path),
            case_sensitive=case_sensitive,
            lemmatize_entries=DEFAULT_FIELDS.get(name) == "lemma",
        )

    def contains_phrase(self, tokens: list[str]) -> bool:
        """True iff some contiguous run of ``tokens`` is an entry."""
        for k in range(len(tokens)):
            for width in range(1, min(self._max_len, len(tokens) - k) + 1):
                if tuple(tokens[k:k + width]) in self.entries:
                    return True
        return False


def lexicon_hit(
    lexicon: Lexicon, analyzed: AnalyzedText, match_field: MatchField | None = None
) -> bool:
    """True iff any token (or contiguous token phrase) matches an entry."""
    if match_field is None:
        match_field = DEFAULT_FIELDS.get(lexicon.name, "lowercase")
    if match_field == "surface":
        tokens = [t.surface for t in analyzed.tokens]
    elif match_field == "lemma":
        tokens = [t.lemma for t in analyzed.tokens]
    else:
        tokens = [t.lowercase for t in analyzed.tokens]
    return lexicon.contains_phrase(tokens)


def default_lexicon_dir() -> Path:
    return Path(__file__).resolve().parent.parent / "resources" / "lexicons"


def load_lexicons(directory: str | Path | None = None) -> dict[str, Lexicon]:
    """Load the five bundled lexicons (or same-named files from ``directory``)."""
    directory = Path(directory) if directory else default_lexicon_dir()
    return {name: Lexicon.load(name, directory / f"{name}.txt") for name in LEXICON_NAMES}
