"""Four-aspect label space, combination constraints and label statistics.

Each annotated snippet carries an (intention, disclosure) pair for the
suspected attempt and an (interpretation, strategy) pair per direct
response.  Three constraints prune the raw 3*3*3^n*7^n combination space:

  A. a trolling or playing intention must be hidden or exposed;
  B. a non-trolling intention has nothing to disclose (disclosure None);
  C. a response that reads the comment as trolling or playing cannot use
     the Normal strategy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence


class Intention(Enum):
    TROLLING = "Trolling"
    PLAYING = "Playing"
    NO_TROLLING = "NoTrolling"


class Disclosure(Enum):
    EXPOSED = "Exposed"
    HIDDEN = "Hidden"
    NONE = "None"


class Interpretation(Enum):
    TROLLING = "Trolling"
    PLAYING = "Playing"
    NO_TROLLING = "NoTrolling"


class Strategy(Enum):
    ENGAGE = "Engage"
    PRAISE = "Praise"
    TROLL = "Troll"
    FOLLOW = "Follow"
    FRUSTRATE = "Frustrate"
    NEUTRALIZE = "Neutralize"
    NORMAL = "Normal"


ASPECTS = ("I", "D", "R", "B")

ASPECT_CLASSES: dict[str, type[Enum]] = {
    "I": Intention,
    "D": Disclosure,
    "R": Interpretation,
    "B": Strategy,
}

# Long forms are display-only; the wire always carries the enum value.
DISPLAY_NAMES = {
    "I": {"Trolling": "Trolling", "Playing": "Mock Trolling or Playing", "NoTrolling": "No Trolling"},
    "D": {"Exposed": "Exposed", "Hidden": "Hidden", "None": "None"},
    "R": {"Trolling": "Trolling", "Playing": "Mock Trolling or Playing", "NoTrolling": "No Trolling"},
    "B": {s.value: s.value for s in Strategy},
}

ASPECT_TITLES = {
    "I": "Intention",
    "D": "Intention Disclosure",
    "R": "Intentions Interpretation",
    "B": "Response Strategy",
}


def validate_combination(
    i: Intention,
    d: Disclosure,
    pairs: Sequence[tuple[Interpretation, Strategy]],
) -> list[str]:
    """Return the subset of constraint ids {A, B, C} the assignment violates."""
    violations = []
    if i in (Intention.TROLLING, Intention.PLAYING) and d not in (Disclosure.HIDDEN, Disclosure.EXPOSED):
        violations.append("A")
    if i is Intention.NO_TROLLING and d is not Disclosure.NONE:
        violations.append("B")
    if any(
        r in (Interpretation.TROLLING, Interpretation.PLAYING) and b is Strategy.NORMAL
        for r, b in pairs
    ):
        violations.append("C")
    return violations


def valid_attempt_pairs() -> list[tuple[Intention, Disclosure]]:
    return [
        (i, d)
        for i in Intention
        for d in Disclosure
        if not validate_combination(i, d, [])
    ]


def valid_response_pairs() -> list[tuple[Interpretation, Strategy]]:
    i, d = valid_attempt_pairs()[0]
    return [
        (r, b)
        for r in Interpretation
        for b in Strategy
        if not validate_combination(i, d, [(r, b)])
    ]


def enumerate_valid(n_responses: int) -> int:
    """Count full assignments with no violation for a snippet with n responses.

    Constraints A and B touch only the attempt pair and C only individual
    response pairs, so the count factorizes as
    (#valid attempt pairs) * (#valid response pairs)^n.
    """
    if n_responses < 0:
        raise ValueError("n_responses must be nonnegative")
    return len(valid_attempt_pairs()) * len(valid_response_pairs()) ** n_responses


@dataclass(frozen=True)
class ResponseLabel:
    response_comment_id: str
    interpretation: Interpretation
    strategy: Strategy


@dataclass(frozen=True)
class AttemptLabel:
    intention: Intention
    disclosure: Disclosure


class AnnotationFormatError(ValueError):
    """Raised when an annotation record is malformed or violates constraints."""


@dataclass(frozen=True)
class SnippetAnnotation:
    snippet_id: str
    annotator_id: str
    discarded: bool
    attempt: Optional[AttemptLabel]
    responses: tuple[ResponseLabel, ...]
    submitted_at: str = ""
    phase: str = "production"

    def __post_init__(self) -> None:
        if self.discarded:
            if self.attempt is not None or self.responses:
                raise AnnotationFormatError("a discarded annotation carries no labels")
            return
        if self.attempt is None:
            raise AnnotationFormatError("non-discarded annotation lacks attempt labels")
        violations = self.violations()
        if violations:
            raise AnnotationFormatError(f"constraint violations: {violations}")

    def violations(self) -> list[str]:
        if self.attempt is None:
            return []
        return validate_combination(
            self.attempt.intention,
            self.attempt.disclosure,
            [(r.interpretation, r.strategy) for r in self.responses],
        )

    def to_record(self) -> dict:
        return {
            "snippet_id": self.snippet_id,
            "annotator_id": self.annotator_id,
            "discarded": self.discarded,
            "attempt": (
                None
                if self.attempt is None
                else {
                    "intention": self.attempt.intention.value,
                    "disclosure": self.attempt.disclosure.value,
                }
            ),
            "responses": [
                {
                    "response_comment_id": r.response_comment_id,
                    "interpretation": r.interpretation.value,
                    "strategy": r.strategy.value,
                }
                for r in self.responses
            ],
            "submitted_at": self.submitted_at,
            "phase": self.phase,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "SnippetAnnotation":
        try:
            attempt = None
            if rec.get("attempt") is not None:
                attempt = AttemptLabel(
                    intention=Intention(rec["attempt"]["intention"]),
                    disclosure=Disclosure(rec["attempt"]["disclosure"]),
                )
            responses = tuple(
                ResponseLabel(
                    response_comment_id=str(r["response_comment_id"]),
                    interpretation=Interpretation(r["interpretation"]),
                    strategy=Strategy(r["strategy"]),
                )
                for r in rec.get("responses", [])
            )
            return cls(
                snippet_id=str(rec["snippet_id"]),
                annotator_id=str(rec["annotator_id"]),
                discarded=bool(rec.get("discarded", False)),
                attempt=attempt,
                responses=responses,
                submitted_at=str(rec.get("submitted_at", "")),
                phase=str(rec.get("phase", "production")),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, AnnotationFormatError):
                raise
            raise AnnotationFormatError(f"bad annotation record: {exc}") from exc


@dataclass(frozen=True)
class ClassStat:
    count: int
    percent: float


def distribution(
    annotations: Iterable[SnippetAnnotation],
) -> dict[str, dict[str, ClassStat]]:
    """Per-aspect class histograms with percentages.

    Attempts contribute one unit each to I and D, responses one unit each to
    R and B; discarded annotations contribute nothing.
    """
    counts: dict[str, dict[str, int]] = {
        aspect: {cls.value: 0 for cls in enum} for aspect, enum in ASPECT_CLASSES.items()
    }
    for ann in annotations:
        if ann.discarded or ann.attempt is None:
            continue
        counts["I"][ann.attempt.intention.value] += 1
        counts["D"][ann.attempt.disclosure.value] += 1
        for response in ann.responses:
            counts["R"][response.interpretation.value] += 1
            counts["B"][response.strategy.value] += 1
    result: dict[str, dict[str, ClassStat]] = {}
    for aspect, by_class in counts.items():
        total = sum(by_class.values())
        result[aspect] = {
            name: ClassStat(count, 100.0 * count / total if total else 0.0)
            for name, count in by_class.items()
        }
    return result


def constraint_table() -> dict:
    """Machine-readable schema served to clients so UI logic cannot drift."""
    return {
        "aspects": {
            aspect: {
                "title": ASPECT_TITLES[aspect],
                "classes": [cls.value for cls in enum],
                "display_names": DISPLAY_NAMES[aspect],
            }
            for aspect, enum in ASPECT_CLASSES.items()
        },
        "valid_attempt_pairs": [[i.value, d.value] for i, d in valid_attempt_pairs()],
        "valid_response_pairs": [[r.value, b.value] for r, b in valid_response_pairs()],
        "constraints": {
            "A": "Trolling or Playing intention requires Hidden or Exposed disclosure",
            "B": "NoTrolling intention requires None disclosure",
            "C": "Trolling or Playing interpretation cannot take the Normal strategy",
        },
    }


def write_annotations(annotations: Iterable[SnippetAnnotation], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ann in annotations:
            fh.write(json.dumps(ann.to_record(), ensure_ascii=False) + "\n")


def read_annotations(path: str | Path) -> list[SnippetAnnotation]:
    """Load annotations, rejecting invalid records rather than repairing them."""
    annotations = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                annotations.append(SnippetAnnotation.from_record(json.loads(line)))
            except (json.JSONDecodeError, AnnotationFormatError) as exc:
                raise AnnotationFormatError(f"{path}:{lineno}: {exc}") from exc
    return annotations
