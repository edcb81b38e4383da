#!/usr/bin/env python3
"""The annotation backend end to end, driven through its HTTP API.

Two simulated annotators work through a ten-snippet queue under a double
quota, disagree on one response strategy, and the disagreement is
adjudicated into the gold export.  Everything persists in an append-only
log; reopening the store replays it.

(For a live server + browser UI run:
    trollbench serve --snippets snippets.jsonl --store store/ --port 8100 \
        --double-quota 10 --static frontend/dist)
"""

import tempfile

from fastapi.testclient import TestClient

from trollbench.service import AnnotationStore, create_app
from trollbench.synthetic import synthetic_corpus

snippets, gold = synthetic_corpus()
store_dir = tempfile.mkdtemp(prefix="trollbench-store-")
store = AnnotationStore(snippets[:10], store_dir, double_quota=10)
client = TestClient(create_app(store))

schema = client.get("/api/schema").json()
print(f"served schema: {len(schema['valid_attempt_pairs'])} valid attempt pairs, "
      f"{len(schema['valid_response_pairs'])} valid response pairs")


def label_everything(annotator: str, flip_one: bool) -> None:
    flipped = False
    while True:
        nxt = client.get("/api/snippets/next", params={"annotator": annotator}).json()
        if nxt["snippet"] is None:
            break
        snippet = nxt["snippet"]
        truth = gold[snippet["snippet_id"]]
        responses = []
        for rec, label in zip(snippet["responses"], truth.responses):
            strategy = label.strategy.value
            if flip_one and not flipped and strategy == "Engage":
                strategy, flipped = "Troll", True
            responses.append(
                {
                    "response_comment_id": rec["id"],
                    "interpretation": label.interpretation.value,
                    "strategy": strategy,
                }
            )
        resp = client.post(
            "/api/annotations",
            json={
                "snippet_id": snippet["snippet_id"],
                "annotator_id": annotator,
                "discarded": False,
                "attempt": {
                    "intention": truth.attempt.intention.value,
                    "disclosure": truth.attempt.disclosure.value,
                },
                "responses": responses,
            },
        )
        assert resp.status_code == 200, resp.text


# the constraint gate in action: a forged invalid payload bounces with 422
first = snippets[0]
bad = client.post(
    "/api/annotations",
    json={
        "snippet_id": first.snippet_id,
        "annotator_id": "annie",
        "discarded": False,
        "attempt": {"intention": "NoTrolling", "disclosure": "Hidden"},
        "responses": [
            {"response_comment_id": r.id, "interpretation": "Trolling", "strategy": "Normal"}
            for r in first.responses
        ],
    },
)
print(f"forged invalid payload -> HTTP {bad.status_code}, violations {bad.json()['violations']}")

label_everything("annie", flip_one=False)
label_everything("bert", flip_one=True)

agreement = client.get("/api/agreement").json()["aspects"]
print("\nagreement after both annotators finished:")
for aspect, row in agreement.items():
    print(f"  {aspect}: n={row['n']:3d}  kappa={row['kappa']:.3f}")

discrepancies = client.get("/api/discrepancies").json()
print(f"\ndiscrepancies: {len(discrepancies)}")
for disc in discrepancies:
    print(f"  {disc['item_id']} [{disc['aspect']}]: {disc['label_a']} vs {disc['label_b']}")
    client.post(
        "/api/adjudications",
        json={"item_id": disc["item_id"], "aspect": disc["aspect"],
              "label": disc["label_a"], "resolver": "lead"},
    )

gold_export = client.get("/api/export/gold").json()
print(f"\ngold export complete for {sum(r['complete'] for r in gold_export)}"
      f"/{len(gold_export)} snippets")

reopened = AnnotationStore(snippets[:10], store_dir, double_quota=10)
print(f"replayed store has {len(reopened.annotations)} annotations "
      f"and {len(reopened.adjudications)} adjudications (crash-safe)")
