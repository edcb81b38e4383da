"""Comment-dump ingestion, conversation-tree rebuilding and snippet mining.

A snippet is the unit of study downstream: the parent of a suspected
trolling attempt (when present), the attempt itself, and all of its direct
responses.  A comment counts as a suspected attempt when at least one
non-deleted direct reply contains a token within a small edit distance of
the trigger word (default "troll", distance 1).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional

DELETED_SENTINEL = "[deleted]"

# Maximal runs of letters; trigger matching deliberately ignores digits and
# punctuation so "troll!" and "TROLL." hit while "tr0ll" does not.
_LETTER_RUN = re.compile(r"[^\W\d_]+", re.UNICODE)


class IngestionError(Exception):
    """Raised when a dump stream cannot be read at all."""


class FormatMismatchError(IngestionError):
    """Raised when most of a dump fails to parse under the declared format."""


class StructureError(Exception):
    """Raised when parent links do not form a forest."""


@dataclass(frozen=True)
class Comment:
    id: str
    parent_id: Optional[str]
    thread_id: str
    author_username: str
    body: str
    created_utc: int
    deleted: bool = False

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "parent_id": self.parent_id,
            "thread_id": self.thread_id,
            "author_username": self.author_username,
            "body": self.body,
            "created_utc": self.created_utc,
            "deleted": self.deleted,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Comment":
        return cls(
            id=str(rec["id"]),
            parent_id=rec.get("parent_id"),
            thread_id=str(rec["thread_id"]),
            author_username=str(rec.get("author_username", "")),
            body=str(rec.get("body", "")),
            created_utc=int(rec.get("created_utc", 0)),
            deleted=bool(rec.get("deleted", False)),
        )


@dataclass
class DumpFormat:
    """Field mapping from raw line-delimited records to Comment fields."""

    name: str
    id_field: str = "id"
    parent_field: str = "parent_id"
    thread_field: str = "thread_id"
    author_field: str = "author"
    body_field: str = "body"
    created_field: str = "created_utc"
    # Prefixes stripped from ids ("t1_abc" -> "abc"); a parent bearing a
    # prefix listed in root_parent_prefixes points at the post itself, so the
    # comment is top-level and its parent_id becomes None.
    id_prefixes: tuple[str, ...] = ()
    root_parent_prefixes: tuple[str, ...] = ()
    deletion_sentinel: str = DELETED_SENTINEL

    def comment_from_raw(self, raw: dict) -> Comment:
        cid = self._strip(str(raw[self.id_field]))
        parent = raw.get(self.parent_field)
        parent_id: Optional[str]
        if parent is None or parent == "":
            parent_id = None
        else:
            parent = str(parent)
            if any(parent.startswith(p) for p in self.root_parent_prefixes):
                parent_id = None
            else:
                parent_id = self._strip(parent)
        body = str(raw.get(self.body_field, ""))
        return Comment(
            id=cid,
            parent_id=parent_id,
            thread_id=self._strip(str(raw[self.thread_field])),
            author_username=str(raw.get(self.author_field, "")),
            body=body,
            created_utc=int(raw[self.created_field]),
            deleted=body == self.deletion_sentinel,
        )

    def _strip(self, value: str) -> str:
        for prefix in self.id_prefixes:
            if value.startswith(prefix):
                return value[len(prefix):]
        return value


FORMATS: dict[str, DumpFormat] = {
    "reddit-jsonl": DumpFormat(
        name="reddit-jsonl",
        thread_field="link_id",
        id_prefixes=("t1_", "t3_"),
        root_parent_prefixes=("t3_",),
    ),
    "generic-jsonl": DumpFormat(name="generic-jsonl", author_field="author_username"),
}


def register_format(fmt: DumpFormat) -> None:
    FORMATS[fmt.name] = fmt


@dataclass
class ParseStats:
    parsed: int = 0
    skipped: int = 0


def parse_dump(
    stream: IO[bytes] | IO[str] | Iterable[str],
    format: str | DumpFormat = "reddit-jsonl",
    stats: ParseStats | None = None,
) -> Iterator[Comment]:
    """Yield Comments from a line-delimited dump, in stream order.

    Malformed lines are counted in ``stats.skipped`` and skipped.  If more
    than half of the non-blank lines fail to parse, the declared format is
    considered wrong and FormatMismatchError is raised once the stream is
    exhausted.
    """
    fmt = FORMATS[format] if isinstance(format, str) else format
    if stats is None:
        stats = ParseStats()
    try:
        for line in stream:
            if isinstance(line, bytes):
                line = line.decode("utf-8", errors="replace")
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                comment = fmt.comment_from_raw(raw)
            except (ValueError, KeyError, TypeError):
                stats.skipped += 1
                continue
            stats.parsed += 1
            yield comment
    except OSError as exc:
        raise IngestionError(f"unreadable dump stream: {exc}") from exc
    total = stats.parsed + stats.skipped
    if total and stats.skipped * 2 > total:
        raise FormatMismatchError(
            f"{stats.skipped}/{total} lines failed to parse as {fmt.name}"
        )


@dataclass
class ConversationThread:
    thread_id: str
    comments: dict[str, Comment] = field(default_factory=dict)
    children: dict[str, list[str]] = field(default_factory=dict)
    roots: list[str] = field(default_factory=list)
    orphans: set[str] = field(default_factory=set)

    def walk(self) -> Iterator[Comment]:
        """Depth-first traversal over all comments, roots first."""
        stack = list(reversed(self.roots))
        while stack:
            cid = stack.pop()
            yield self.comments[cid]
            stack.extend(reversed(self.children.get(cid, [])))


def build_threads(comments: Iterable[Comment]) -> dict[str, ConversationThread]:
    """Group comments by thread and rebuild each reply tree.

    Orphans (parent_id referencing a comment missing from the dump) become
    additional roots and are flagged in ``thread.orphans``; they are never
    dropped.  Children are ordered by (created_utc, id).
    """
    threads: dict[str, ConversationThread] = {}
    for comment in comments:
        thread = threads.setdefault(comment.thread_id, ConversationThread(comment.thread_id))
        if comment.id in thread.comments:
            continue  # dumps occasionally repeat records; first one wins
        thread.comments[comment.id] = comment

    for thread in threads.values():
        order = lambda cid: (thread.comments[cid].created_utc, cid)
        kids: dict[str, list[str]] = {}
        for comment in thread.comments.values():
            pid = comment.parent_id
            if pid is None:
                thread.roots.append(comment.id)
            elif pid in thread.comments:
                kids.setdefault(pid, []).append(comment.id)
            else:
                thread.orphans.add(comment.id)
                thread.roots.append(comment.id)
        thread.children = {pid: sorted(ids, key=order) for pid, ids in sorted(kids.items())}
        thread.roots.sort(key=order)
        _check_forest(thread)
    return dict(sorted(threads.items()))


def _check_forest(thread: ConversationThread) -> None:
    seen: set[str] = set()
    for comment in thread.walk():
        seen.add(comment.id)
    missing = set(thread.comments) - seen
    if missing:
        raise StructureError(
            f"cycle in thread {thread.thread_id}: comments {sorted(missing)} unreachable"
        )


def levenshtein(a: str, b: str) -> int:
    """Unit-cost insert/delete/substitute edit distance."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,        # delete from a
                    current[j - 1] + 1,     # insert into a
                    previous[j - 1] + (ca != cb),
                )
            )
        previous = current
    return previous[-1]


def trigger_tokens(text: str) -> Iterator[str]:
    """Lowercased maximal letter runs of ``text``."""
    for match in _LETTER_RUN.finditer(text):
        yield match.group(0).lower()


def has_trigger(text: str, trigger: str = "troll", max_dist: int = 1) -> bool:
    """True iff some token of ``text`` is within ``max_dist`` edits of ``trigger``."""
    trigger = trigger.lower()
    for token in trigger_tokens(text):
        # cheap length gate before the DP
        if abs(len(token) - len(trigger)) <= max_dist and levenshtein(token, trigger) <= max_dist:
            return True
    return False


def find_suspects(
    thread: ConversationThread, trigger: str = "troll", max_dist: int = 1
) -> set[str]:
    """Ids of comments with >=1 non-deleted direct reply containing a trigger token."""
    suspects: set[str] = set()
    for parent_id, child_ids in thread.children.items():
        for cid in child_ids:
            child = thread.comments[cid]
            if child.deleted:
                continue
            if has_trigger(child.body, trigger, max_dist):
                suspects.add(parent_id)
                break
    return suspects


@dataclass(frozen=True)
class Snippet:
    snippet_id: str
    thread_id: str
    context: Optional[Comment]
    attempt: Comment
    responses: tuple[Comment, ...]

    def to_record(self) -> dict:
        return {
            "snippet_id": self.snippet_id,
            "thread_id": self.thread_id,
            "context": self.context.to_record() if self.context else None,
            "attempt": self.attempt.to_record(),
            "responses": [r.to_record() for r in self.responses],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Snippet":
        return cls(
            snippet_id=str(rec["snippet_id"]),
            thread_id=str(rec["thread_id"]),
            context=Comment.from_record(rec["context"]) if rec.get("context") else None,
            attempt=Comment.from_record(rec["attempt"]),
            responses=tuple(Comment.from_record(r) for r in rec["responses"]),
        )


@dataclass
class ExtractStats:
    extracted: int = 0
    dropped_no_responses: int = 0
    dropped_deleted_attempt: int = 0


def extract_snippets(
    thread: ConversationThread,
    suspects: set[str],
    stats: ExtractStats | None = None,
) -> list[Snippet]:
    """Build one Snippet per suspect; deleted comments never survive.

    The context is the attempt's parent when it exists and is not deleted.
    Suspects whose attempt is deleted, or with no non-deleted response left,
    are dropped and counted.
    """
    unknown = suspects - set(thread.comments)
    if unknown:
        raise KeyError(f"suspects not in thread {thread.thread_id}: {sorted(unknown)}")
    if stats is None:
        stats = ExtractStats()
    snippets = []
    order = lambda cid: (thread.comments[cid].created_utc, cid)
    for sid in sorted(suspects, key=order):
        attempt = thread.comments[sid]
        if attempt.deleted:
            stats.dropped_deleted_attempt += 1
            continue
        responses = tuple(
            thread.comments[cid]
            for cid in thread.children.get(sid, [])
            if not thread.comments[cid].deleted
        )
        if not responses:
            stats.dropped_no_responses += 1
            continue
        context = None
        if attempt.parent_id is not None:
            parent = thread.comments.get(attempt.parent_id)
            if parent is not None and not parent.deleted:
                context = parent
        snippets.append(
            Snippet(
                snippet_id=f"{thread.thread_id}/{attempt.id}",
                thread_id=thread.thread_id,
                context=context,
                attempt=attempt,
                responses=responses,
            )
        )
        stats.extracted += 1
    return snippets


def mine_snippets(
    comments: Iterable[Comment],
    trigger: str = "troll",
    max_dist: int = 1,
    stats: ExtractStats | None = None,
) -> list[Snippet]:
    """Full mining pass: threads -> suspects -> snippets, deterministically ordered."""
    snippets: list[Snippet] = []
    for thread in build_threads(comments).values():
        suspects = find_suspects(thread, trigger, max_dist)
        snippets.extend(extract_snippets(thread, suspects, stats))
    return snippets


def write_snippets(snippets: Iterable[Snippet], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for snippet in snippets:
            fh.write(json.dumps(snippet.to_record(), ensure_ascii=False) + "\n")


def read_snippets(path: str | Path) -> list[Snippet]:
    snippets = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                snippets.append(Snippet.from_record(json.loads(line)))
    return snippets


def write_comments(comments: Iterable[Comment], path: str | Path) -> None:
    """Write normalized comments, grouped by thread for stable downstream order."""
    ordered = sorted(comments, key=lambda c: (c.thread_id, c.created_utc, c.id))
    with open(path, "w", encoding="utf-8") as fh:
        for comment in ordered:
            fh.write(json.dumps(comment.to_record(), ensure_ascii=False) + "\n")


def read_comments(path: str | Path) -> list[Comment]:
    comments = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                comments.append(Comment.from_record(json.loads(line)))
    return comments
