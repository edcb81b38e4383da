"""Word-vector tables and averaged comment representations."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .analysis import AnalyzedText


@dataclass
class EmbeddingTable:
    dimension: int
    vectors: dict[str, np.ndarray]

    @classmethod
    def load(cls, path: str | Path) -> "EmbeddingTable":
        """Text format, one line per word: ``word v1 ... vd``.

        The dimension is inferred from the first line and enforced for the
        rest of the file.
        """
        vectors: dict[str, np.ndarray] = {}
        dimension = 0
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                parts = line.rstrip("\n").split()
                if not parts:
                    continue
                word, values = parts[0], parts[1:]
                if dimension == 0:
                    dimension = len(values)
                    if dimension == 0:
                        raise ValueError(f"{path}:{lineno}: no vector components")
                elif len(values) != dimension:
                    raise ValueError(
                        f"{path}:{lineno}: expected {dimension} components, got {len(values)}"
                    )
                vectors[word.lower()] = np.array([float(v) for v in values], dtype=np.float64)
        if not vectors:
            raise ValueError(f"empty embedding file: {path}")
        return cls(dimension=dimension, vectors=vectors)

    @classmethod
    def deterministic(cls, words: Iterable[str], dimension: int = 25) -> "EmbeddingTable":
        """Reproducible pseudo-random vectors keyed by a stable word hash.

        Useful for demos and synthetic experiments where no pre-trained
        table is available; the same word always gets the same vector.
        """
        vectors = {}
        for word in words:
            word = word.lower()
            if word in vectors:
                continue
            digest = hashlib.sha256(word.encode("utf-8")).digest()
            seed = int.from_bytes(digest[:8], "big")
            rng = np.random.default_rng(seed)
            vectors[word] = rng.standard_normal(dimension) / np.sqrt(dimension)
        return cls(dimension=dimension, vectors=vectors)

    def save(self, path: str | Path, precision: int = 6) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for word in sorted(self.vectors):
                components = " ".join(f"{v:.{precision}f}" for v in self.vectors[word])
                fh.write(f"{word} {components}\n")

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.vectors


def embed_average(table: EmbeddingTable, analyzed: AnalyzedText) -> np.ndarray:
    """Mean vector over lowercase token occurrences found in the table.

    Out-of-vocabulary tokens are skipped; with no in-vocabulary token the
    result is the zero vector.
    """
    total = np.zeros(table.dimension, dtype=np.float64)
    hits = 0
    for token in analyzed.tokens:
        vector = table.vectors.get(token.lowercase)
        if vector is not None:
            total += vector
            hits += 1
    if hits == 0:
        return total
    return total / hits
