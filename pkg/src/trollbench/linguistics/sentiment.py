"""Valence-lexicon sentiment scoring with negation and intensifiers.

Each word token carries a signed valence from the bundled lexicon.  A
negator within the three preceding word tokens flips the sign; an
intensifier in the same window shifts the magnitude by a fixed step.  The
compound score squashes the signed sum S through S/sqrt(S^2 + alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .analysis import AnalyzedText

ALPHA = 15.0
BOOST_STEP = 0.293

NEGATORS = frozenset(
    """not n't no never none nobody nothing neither nor nowhere cannot
    without hardly barely scarcely isnt arent wasnt werent dont doesnt
    didnt wont cant couldnt shouldnt wouldnt aint""".split()
)

INTENSIFIERS = {
    "absolutely": BOOST_STEP, "amazingly": BOOST_STEP, "completely": BOOST_STEP,
    "considerably": BOOST_STEP, "decidedly": BOOST_STEP, "deeply": BOOST_STEP,
    "enormously": BOOST_STEP, "entirely": BOOST_STEP, "especially": BOOST_STEP,
    "exceptionally": BOOST_STEP, "extremely": BOOST_STEP, "fucking": BOOST_STEP,
    "greatly": BOOST_STEP, "highly": BOOST_STEP, "hugely": BOOST_STEP,
    "incredibly": BOOST_STEP, "intensely": BOOST_STEP, "majorly": BOOST_STEP,
    "really": BOOST_STEP, "remarkably": BOOST_STEP, "so": BOOST_STEP,
    "substantially": BOOST_STEP, "thoroughly": BOOST_STEP, "totally": BOOST_STEP,
    "tremendously": BOOST_STEP, "unbelievably": BOOST_STEP, "utterly": BOOST_STEP,
    "very": BOOST_STEP,
    "almost": -BOOST_STEP, "barely": -BOOST_STEP, "hardly": -BOOST_STEP,
    "kinda": -BOOST_STEP, "kindof": -BOOST_STEP, "less": -BOOST_STEP,
    "little": -BOOST_STEP, "marginally": -BOOST_STEP, "occasionally": -BOOST_STEP,
    "partly": -BOOST_STEP, "scarcely": -BOOST_STEP, "slightly": -BOOST_STEP,
    "somewhat": -BOOST_STEP, "sorta": -BOOST_STEP, "sortof": -BOOST_STEP,
}

NEGATION_WINDOW = 3

_DEFAULT_LEXICON: dict[str, float] | None = None


@dataclass(frozen=True)
class SentimentScores:
    positive: float
    neutral: float
    negative: float
    compound: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.positive, self.neutral, self.negative, self.compound)


def load_valence_lexicon(path: str | Path) -> dict[str, float]:
    """word<whitespace>score per line; '#' starts a comment."""
    lexicon: dict[str, float] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            word, score = line.rsplit(None, 1)
            lexicon[word.lower()] = float(score)
    if not lexicon:
        raise ValueError(f"empty valence lexicon: {path}")
    return lexicon


def default_valence_lexicon() -> dict[str, float]:
    global _DEFAULT_LEXICON
    if _DEFAULT_LEXICON is None:
        path = Path(__file__).resolve().parent.parent / "resources" / "sentiment" / "valence.txt"
        _DEFAULT_LEXICON = load_valence_lexicon(path)
    return _DEFAULT_LEXICON


def compound_score(signed_sum: float, alpha: float = ALPHA) -> float:
    return signed_sum / math.sqrt(signed_sum * signed_sum + alpha)


def sentiment(
    analyzed: AnalyzedText, lexicon: dict[str, float] | None = None
) -> SentimentScores:
    """Score a whole comment; empty or fully neutral text is (0, 1, 0, 0)."""
    if lexicon is None:
        lexicon = default_valence_lexicon()
    words = [t.lowercase for t in analyzed.tokens if t.is_word()]

    pos_mass = 0.0
    neg_mass = 0.0
    neutral_count = 0
    signed_sum = 0.0
    for k, word in enumerate(words):
        valence = lexicon.get(word)
        if valence is None or valence == 0.0:
            neutral_count += 1
            continue
        window = words[max(0, k - NEGATION_WINDOW):k]
        for modifier in window:
            step = INTENSIFIERS.get(modifier)
            if step is not None:
                valence += step if valence > 0 else -step
        if any(w in NEGATORS for w in window):
            valence = -valence
        signed_sum += valence
        if valence > 0:
            pos_mass += valence
        else:
            neg_mass += -valence

    total = pos_mass + neg_mass + neutral_count
    if total == 0.0:
        return SentimentScores(0.0, 1.0, 0.0, 0.0)
    return SentimentScores(
        positive=pos_mass / total,
        neutral=neutral_count / total,
        negative=neg_mass / total,
        compound=compound_score(signed_sum),
    )
