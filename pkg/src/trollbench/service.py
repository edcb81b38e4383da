"""Annotation backend: assignment, constraint-validated submission, durable
append-only storage, agreement reporting and adjudication.

All writes serialize through one lock and are flushed+fsynced before the
caller sees an acknowledgment; reopening a store replays the logs into an
identical index.  The first ``double_quota`` snippets (in file order) are
offered until two distinct annotators have covered them, later ones until
one has.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse

from .agreement import PairedAnnotations, pair_annotations
from .corpus import Snippet, read_snippets
from .schema import (
    ASPECT_CLASSES,
    AnnotationFormatError,
    AttemptLabel,
    Disclosure,
    Intention,
    Interpretation,
    ResponseLabel,
    SnippetAnnotation,
    Strategy,
    constraint_table,
    distribution,
    validate_combination,
)

ANNOTATION_LOG = "annotations.log"
ADJUDICATION_LOG = "adjudications.log"

PHASES = ("training", "production")


class ServiceError(Exception):
    pass


@dataclass
class Rejection(Exception):
    violations: list[str]

    def __str__(self) -> str:
        return f"rejected: {self.violations}"


@dataclass(frozen=True)
class Adjudication:
    item_id: str
    aspect: str
    label: str
    resolver_id: str
    resolved_at: str = ""

    def to_record(self) -> dict:
        return {
            "item_id": self.item_id,
            "aspect": self.aspect,
            "label": self.label,
            "resolver_id": self.resolver_id,
            "resolved_at": self.resolved_at,
        }


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")


class AnnotationStore:
    """Snippet queue plus replayable annotation/adjudication logs."""

    def __init__(
        self,
        snippets: list[Snippet],
        store_dir: str | Path,
        double_quota: int = 100,
    ) -> None:
        self.snippets = {s.snippet_id: s for s in snippets}
        self.order = [s.snippet_id for s in snippets]
        self._position = {sid: k for k, sid in enumerate(self.order)}
        self.store_dir = Path(store_dir)
        self.store_dir.mkdir(parents=True, exist_ok=True)
        self.double_quota = double_quota
        self.phase = "production"
        self.annotations: dict[tuple[str, str], SnippetAnnotation] = {}
        self.by_snippet: dict[str, dict[str, SnippetAnnotation]] = {}
        self.adjudications: dict[tuple[str, str], Adjudication] = {}
        self._lock = threading.Lock()
        self._replay()

    @classmethod
    def open(
        cls, snippets_path: str | Path, store_dir: str | Path, double_quota: int = 100
    ) -> "AnnotationStore":
        return cls(read_snippets(snippets_path), store_dir, double_quota)

    # -- log plumbing ------------------------------------------------------

    def _replay(self) -> None:
        ann_log = self.store_dir / ANNOTATION_LOG
        if ann_log.exists():
            with open(ann_log, encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    rec = json.loads(line)
                    if rec.get("event") == "phase":
                        self.phase = rec["phase"]
                        continue
                    self._index(SnippetAnnotation.from_record(rec))
        adj_log = self.store_dir / ADJUDICATION_LOG
        if adj_log.exists():
            with open(adj_log, encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    rec = json.loads(line)
                    adj = Adjudication(
                        item_id=rec["item_id"],
                        aspect=rec["aspect"],
                        label=rec["label"],
                        resolver_id=rec["resolver_id"],
                        resolved_at=rec.get("resolved_at", ""),
                    )
                    self.adjudications[(adj.item_id, adj.aspect)] = adj

    def _append(self, filename: str, record: dict) -> None:
        path = self.store_dir / filename
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def _index(self, ann: SnippetAnnotation) -> None:
        self.annotations[(ann.snippet_id, ann.annotator_id)] = ann
        self.by_snippet.setdefault(ann.snippet_id, {})[ann.annotator_id] = ann

    # -- workflow ----------------------------------------------------------

    def target_annotators(self, snippet_id: str) -> int:
        position = self._position.get(snippet_id)
        if position is None:
            raise ServiceError(f"unknown snippet: {snippet_id}")
        return 2 if position < self.double_quota else 1

    def next_snippet(self, annotator_id: str) -> Optional[Snippet]:
        """Lowest-ordered snippet still owed annotations and new to this annotator."""
        with self._lock:
            for sid in self.order:
                done_by = self.by_snippet.get(sid, {})
                if annotator_id in done_by:
                    continue
                if len(done_by) < self.target_annotators(sid):
                    return self.snippets[sid]
        return None

    def submit_payload(self, payload: dict) -> SnippetAnnotation:
        """Validate a raw submission and persist it; raises Rejection."""
        snippet_id = str(payload.get("snippet_id", ""))
        annotator_id = str(payload.get("annotator_id", ""))
        snippet = self.snippets.get(snippet_id)
        if snippet is None:
            raise Rejection(["unknown-snippet"])
        if not annotator_id:
            raise Rejection(["missing-annotator"])
        discarded = bool(payload.get("discarded", False))

        if discarded:
            annotation = SnippetAnnotation(
                snippet_id=snippet_id,
                annotator_id=annotator_id,
                discarded=True,
                attempt=None,
                responses=(),
                submitted_at=_now(),
                phase=self.phase,
            )
            return self._commit(annotation)

        try:
            attempt_raw = payload["attempt"]
            intention = Intention(attempt_raw["intention"])
            disclosure = Disclosure(attempt_raw["disclosure"])
            responses = [
                (
                    str(r["response_comment_id"]),
                    Interpretation(r["interpretation"]),
                    Strategy(r["strategy"]),
                )
                for r in payload.get("responses", [])
            ]
        except (KeyError, TypeError, ValueError):
            raise Rejection(["bad-payload"])

        expected_ids = [r.id for r in snippet.responses]
        if [rid for rid, _, _ in responses] != expected_ids:
            raise Rejection(["id-mismatch"])

        violations = validate_combination(
            intention, disclosure, [(i, s) for _, i, s in responses]
        )
        if violations:
            raise Rejection(violations)

        annotation = SnippetAnnotation(
            snippet_id=snippet_id,
            annotator_id=annotator_id,
            discarded=False,
            attempt=AttemptLabel(intention, disclosure),
            responses=tuple(ResponseLabel(rid, i, s) for rid, i, s in responses),
            submitted_at=_now(),
            phase=self.phase,
        )
        return self._commit(annotation)

    def _commit(self, annotation: SnippetAnnotation) -> SnippetAnnotation:
        with self._lock:
            key = (annotation.snippet_id, annotation.annotator_id)
            if key in self.annotations:
                raise Rejection(["duplicate"])
            self._append(ANNOTATION_LOG, annotation.to_record())
            self._index(annotation)
        return annotation

    def set_phase(self, phase: str) -> None:
        if phase not in PHASES:
            raise ServiceError(f"phase must be one of {PHASES}")
        with self._lock:
            self._append(ANNOTATION_LOG, {"event": "phase", "phase": phase})
            self.phase = phase

    # -- agreement / adjudication ------------------------------------------

    def production_annotations(self) -> list[SnippetAnnotation]:
        return [a for a in self.annotations.values() if a.phase == "production"]

    def _paired(self) -> PairedAnnotations:
        """Per doubly-annotated snippet, the two lexicographically first
        annotators supply the (a, b) sides."""
        side_a: list[SnippetAnnotation] = []
        side_b: list[SnippetAnnotation] = []
        for sid in self.order:
            by_annotator = {
                aid: ann
                for aid, ann in self.by_snippet.get(sid, {}).items()
                if ann.phase == "production"
            }
            if len(by_annotator) < 2:
                continue
            first, second = sorted(by_annotator)[:2]
            side_a.append(by_annotator[first])
            side_b.append(by_annotator[second])
        return pair_annotations(side_a, side_b, "a", "b")

    def agreement_report(self) -> dict:
        paired = self._paired()
        return {
            "aspects": paired.kappa_report(),
            "no_overlap": paired.no_overlap,
        }

    def discrepancy_list(self) -> list[dict]:
        out = []
        for disc in self._paired().discrepancies:
            resolution = self.adjudications.get((disc.item_id, disc.aspect))
            out.append(
                {
                    "item_id": disc.item_id,
                    "aspect": disc.aspect,
                    "label_a": disc.label_a,
                    "label_b": disc.label_b,
                    "kind": disc.kind,
                    "resolved": resolution is not None,
                    "resolution": resolution.label if resolution else None,
                }
            )
        return out

    def adjudicate(self, item_id: str, aspect: str, label: str, resolver_id: str) -> Adjudication:
        open_items = {(d.item_id, d.aspect) for d in self._paired().discrepancies}
        if (item_id, aspect) not in open_items:
            raise Rejection(["no-such-discrepancy"])
        if aspect in ASPECT_CLASSES:
            valid = {c.value for c in ASPECT_CLASSES[aspect]}
            if label not in valid:
                raise Rejection(["bad-label"])
        adjudication = Adjudication(item_id, aspect, label, resolver_id, _now())
        with self._lock:
            self._append(ADJUDICATION_LOG, adjudication.to_record())
            self.adjudications[(item_id, aspect)] = adjudication
        return adjudication

    # -- exports -----------------------------------------------------------

    def stats(self) -> dict:
        production = self.production_annotations()
        labeled = [a for a in production if not a.discarded]
        dist = distribution(labeled)
        return {
            "phase": self.phase,
            "snippets": len(self.order),
            "annotations": len(production),
            "discarded": sum(1 for a in production if a.discarded),
            "distribution": {
                aspect: {
                    cls: {"count": stat.count, "percent": stat.percent}
                    for cls, stat in by_class.items()
                }
                for aspect, by_class in dist.items()
            },
        }

    def _resolved_label(self, item_id: str, aspect: str, values: list[str]) -> Optional[str]:
        adjudication = self.adjudications.get((item_id, aspect))
        if adjudication is not None:
            return adjudication.label
        unique = set(values)
        if len(unique) == 1:
            return values[0]
        return None

    def export_gold(self) -> list[dict]:
        """Adjudication-preferring merge of the production annotations.

        A snippet appears once at least one annotator labeled it (discards
        are abstentions); an aspect is null until agreement or adjudication
        settles it.
        """
        records = []
        for sid in self.order:
            anns = [
                a
                for a in self.by_snippet.get(sid, {}).values()
                if a.phase == "production" and not a.discarded
            ]
            if not anns:
                continue
            intention = self._resolved_label(
                sid, "I", [a.attempt.intention.value for a in anns]
            )
            disclosure = self._resolved_label(
                sid, "D", [a.attempt.disclosure.value for a in anns]
            )
            complete = intention is not None and disclosure is not None
            responses = []
            for response in self.snippets[sid].responses:
                item = f"{sid}#{response.id}"
                interps = [
                    r.interpretation.value
                    for a in anns
                    for r in a.responses
                    if r.response_comment_id == response.id
                ]
                strats = [
                    r.strategy.value
                    for a in anns
                    for r in a.responses
                    if r.response_comment_id == response.id
                ]
                interp = self._resolved_label(item, "R", interps) if interps else None
                strat = self._resolved_label(item, "B", strats) if strats else None
                complete = complete and interp is not None and strat is not None
                responses.append(
                    {
                        "response_comment_id": response.id,
                        "interpretation": interp,
                        "strategy": strat,
                    }
                )
            records.append(
                {
                    "snippet_id": sid,
                    "annotator_id": "gold",
                    "discarded": False,
                    "attempt": {"intention": intention, "disclosure": disclosure},
                    "responses": responses,
                    "complete": complete,
                }
            )
        return records


def create_app(store: AnnotationStore, static_dir: str | Path | None = None) -> FastAPI:
    """FastAPI application over an AnnotationStore."""
    app = FastAPI(title="trollbench annotation service")

    @app.exception_handler(Rejection)
    async def rejection_handler(request: Request, exc: Rejection):
        return JSONResponse(status_code=422, content={"violations": exc.violations})

    @app.get("/api/schema")
    def get_schema():
        return constraint_table()

    @app.get("/api/snippets/next")
    def get_next(annotator: str = Query(...)):
        snippet = store.next_snippet(annotator)
        done = sum(1 for (sid, aid) in store.annotations if aid == annotator)
        return {
            "snippet": snippet.to_record() if snippet else None,
            "annotator": annotator,
            "completed": done,
            "total_snippets": len(store.order),
        }

    @app.post("/api/annotations")
    async def post_annotation(request: Request):
        payload = await request.json()
        annotation = store.submit_payload(payload)
        return {"status": "accepted", "annotation": annotation.to_record()}

    @app.get("/api/agreement")
    def get_agreement():
        return store.agreement_report()

    @app.get("/api/discrepancies")
    def get_discrepancies():
        return store.discrepancy_list()

    @app.post("/api/adjudications")
    async def post_adjudication(request: Request):
        payload = await request.json()
        try:
            adjudication = store.adjudicate(
                str(payload["item_id"]),
                str(payload["aspect"]),
                str(payload["label"]),
                str(payload.get("resolver", payload.get("resolver_id", ""))),
            )
        except KeyError:
            raise Rejection(["bad-payload"])
        return {"status": "accepted", "adjudication": adjudication.to_record()}

    @app.get("/api/stats")
    def get_stats():
        return store.stats()

    @app.get("/api/export/gold")
    def get_gold():
        return store.export_gold()

    @app.post("/api/phase")
    async def post_phase(request: Request):
        payload = await request.json()
        phase = str(payload.get("phase", ""))
        try:
            store.set_phase(phase)
        except ServiceError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"status": "accepted", "phase": phase}

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


def serve(
    snippets_path: str | Path,
    store_dir: str | Path,
    port: int = 8100,
    double_quota: int = 100,
    static_dir: str | Path | None = None,
    host: str = "127.0.0.1",
) -> None:
    import uvicorn

    store = AnnotationStore.open(snippets_path, store_dir, double_quota)
    app = create_app(store, static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
