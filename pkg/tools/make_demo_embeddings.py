#!/usr/bin/env python3
"""Regenerate the bundled demo embedding table.

Deterministic 25-d vectors (stable word-hash seeding) over the synthetic
corpus vocabulary; real experiments should point --embeddings at proper
pre-trained vectors instead.

    python tools/make_demo_embeddings.py
"""

from __future__ import annotations

from pathlib import Path

from trollbench.linguistics.embeddings import EmbeddingTable
from trollbench.synthetic import EMBEDDING_DIM, corpus_vocabulary, synthetic_corpus


def main() -> None:
    snippets, _ = synthetic_corpus()
    table = EmbeddingTable.deterministic(corpus_vocabulary(snippets), EMBEDDING_DIM)
    out = (
        Path(__file__).resolve().parent.parent
        / "src" / "trollbench" / "resources" / "embeddings" / f"demo_{EMBEDDING_DIM}d.txt"
    )
    out.parent.mkdir(parents=True, exist_ok=True)
    table.save(out)
    print(f"wrote {len(table.vectors)} x {table.dimension} vectors to {out}")


if __name__ == "__main__":
    main()
