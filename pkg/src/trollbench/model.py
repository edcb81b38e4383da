"""Regularized multinomial logistic regression and the majority baseline.

The trainer is deliberately boring: full-batch gradient descent with
Armijo backtracking from a zero start.  The objective is convex, so the
zero initialization costs nothing, and the fixed iteration order makes
training bit-deterministic for identical inputs.
"""

from __future__ import annotations

import base64
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

import numpy as np
from scipy import sparse as sp

Matrix = Union[np.ndarray, sp.spmatrix]

MAX_ITERATIONS = 500
GRADIENT_TOL = 1e-6  # infinity norm
ARMIJO_C = 1e-4
BACKTRACK_SHRINK = 0.5
MAX_BACKTRACKS = 60

DEFAULT_LAMBDA_GRID = (1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0)

MODEL_FILE_VERSION = 1


class DegenerateDataError(ValueError):
    pass


class InputError(ValueError):
    pass


@dataclass
class LinearModel:
    classes: list[str]
    weights: np.ndarray  # K x d
    bias: np.ndarray     # K
    lam: float
    iterations: int = 0
    final_objective: float = 0.0
    gradient_norm: float = 0.0

    @property
    def dimension(self) -> int:
        return self.weights.shape[1]

    def scores(self, x: Matrix) -> np.ndarray:
        if x.shape[-1] != self.dimension:
            raise InputError(f"feature width {x.shape[-1]} != model width {self.dimension}")
        z = x @ self.weights.T
        if sp.issparse(z):
            z = z.toarray()
        return np.asarray(z) + self.bias

    def predict_proba(self, x: Matrix) -> np.ndarray:
        """softmax(Wx + b) rows, max-subtracted for stability."""
        return _softmax(self.scores(np.atleast_2d(x) if isinstance(x, np.ndarray) else x))

    def predict(self, x: Matrix) -> list[str]:
        probs = self.predict_proba(x)
        return [self.classes[k] for k in probs.argmax(axis=1)]

    def save(self, path: str | Path) -> None:
        record = {
            "version": MODEL_FILE_VERSION,
            "kind": "softmax-regression",
            "classes": self.classes,
            "d": self.dimension,
            "lambda": self.lam,
            "metadata": {
                "iterations": self.iterations,
                "final_objective": self.final_objective,
                "gradient_norm": self.gradient_norm,
            },
            # raw little-endian float64 bytes so load round-trips bit-exactly
            "weights_b64": base64.b64encode(np.ascontiguousarray(self.weights, dtype="<f8").tobytes()).decode(),
            "bias_b64": base64.b64encode(np.ascontiguousarray(self.bias, dtype="<f8").tobytes()).decode(),
        }
        Path(path).write_text(json.dumps(record) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "LinearModel":
        record = json.loads(Path(path).read_text(encoding="utf-8"))
        if record.get("version") != MODEL_FILE_VERSION:
            raise InputError(f"unsupported model file version: {record.get('version')}")
        classes = [str(c) for c in record["classes"]]
        d = int(record["d"])
        weights = np.frombuffer(base64.b64decode(record["weights_b64"]), dtype="<f8").reshape(len(classes), d).copy()
        bias = np.frombuffer(base64.b64decode(record["bias_b64"]), dtype="<f8").copy()
        meta = record.get("metadata", {})
        return cls(
            classes=classes,
            weights=weights,
            bias=bias,
            lam=float(record["lambda"]),
            iterations=int(meta.get("iterations", 0)),
            final_objective=float(meta.get("final_objective", 0.0)),
            gradient_norm=float(meta.get("gradient_norm", 0.0)),
        )


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def _log_softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=1, keepdims=True)
    return z - np.log(np.exp(z).sum(axis=1, keepdims=True))


def _check_finite(x: Matrix) -> None:
    data = x.data if sp.issparse(x) else x
    if not np.all(np.isfinite(data)):
        raise InputError("non-finite feature values")


# Small design matrices run measurably faster densified (one BLAS call per
# product instead of scipy dispatch); larger ones stay sparse.
DENSIFY_LIMIT = 4_000_000  # n * d entries


def _log_probs(weights: np.ndarray, bias: np.ndarray, x: Matrix) -> np.ndarray:
    z = x @ weights.T
    if sp.issparse(z):
        z = z.toarray()
    return _log_softmax(np.asarray(z) + bias)


def objective_and_gradient(
    weights: np.ndarray,
    bias: np.ndarray,
    x: Matrix,
    y_index: np.ndarray,
    lam: float,
    xt: Matrix | None = None,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean cross-entropy + (lam/2)||W||_F^2 (bias unregularized), with gradients.

    ``xt`` may carry a precomputed transpose to avoid rebuilding it per call.
    """
    n = x.shape[0]
    log_probs = _log_probs(weights, bias, x)
    data_loss = -log_probs[np.arange(n), y_index].sum() / n
    obj = data_loss + 0.5 * lam * float((weights * weights).sum())

    probs = np.exp(log_probs)
    probs[np.arange(n), y_index] -= 1.0
    probs /= n
    if xt is None:
        xt = x.T
    grad_w = np.asarray((xt @ probs).T) + lam * weights
    grad_b = probs.sum(axis=0)
    return obj, grad_w, grad_b


def objective(
    weights: np.ndarray, bias: np.ndarray, x: Matrix, y_index: np.ndarray, lam: float
) -> float:
    n = x.shape[0]
    log_probs = _log_probs(weights, bias, x)
    data_loss = -log_probs[np.arange(n), y_index].sum() / n
    return data_loss + 0.5 * lam * float((weights * weights).sum())


def train(
    x: Matrix,
    labels: Sequence[str],
    lam: float = 1e-4,
    trace: list[float] | None = None,
) -> LinearModel:
    """Deterministic full-batch gradient descent with backtracking line search.

    Stops when the gradient infinity norm drops to 1e-6 or after 500
    iterations; the Armijo condition keeps the objective non-increasing
    across accepted steps.  ``trace``, when given, collects the objective
    value after every accepted step.
    """
    if lam < 0:
        raise InputError("lambda must be nonnegative")
    _check_finite(x)
    classes = sorted(set(labels))
    if len(classes) < 2:
        raise DegenerateDataError(f"training data covers {len(classes)} class(es); need >= 2")
    index = {c: k for k, c in enumerate(classes)}
    y_index = np.array([index[label] for label in labels], dtype=np.intp)

    n, d = x.shape
    if sp.issparse(x) and n * d <= DENSIFY_LIMIT:
        x = x.toarray()
    xt = x.T if isinstance(x, np.ndarray) else x.T.tocsr()
    weights = np.zeros((len(classes), d))
    bias = np.zeros(len(classes))

    obj, grad_w, grad_b = objective_and_gradient(weights, bias, x, y_index, lam, xt)
    if trace is not None:
        trace.append(obj)
    step = 1.0
    iterations = 0
    clean_accepts = 0  # consecutive first-try acceptances
    for iterations in range(1, MAX_ITERATIONS + 1):
        grad_norm = max(np.abs(grad_w).max(initial=0.0), np.abs(grad_b).max(initial=0.0))
        if grad_norm <= GRADIENT_TOL:
            iterations -= 1
            break
        grad_sq = float((grad_w * grad_w).sum() + (grad_b * grad_b).sum())
        accepted = False
        first_try = True
        for _ in range(MAX_BACKTRACKS):
            new_w = weights - step * grad_w
            new_b = bias - step * grad_b
            # evaluate the gradient speculatively: the first candidate is
            # usually accepted, and its gradient feeds the next iteration
            new_obj, new_gw, new_gb = objective_and_gradient(new_w, new_b, x, y_index, lam, xt)
            if new_obj <= obj - ARMIJO_C * step * grad_sq:
                accepted = True
                break
            step *= BACKTRACK_SHRINK
            first_try = False
        if not accepted:
            break  # step underflow: gradient noise floor reached
        weights, bias, obj = new_w, new_b, new_obj
        grad_w, grad_b = new_gw, new_gb
        if trace is not None:
            trace.append(obj)
        if first_try:
            clean_accepts += 1
            if clean_accepts >= 3:  # probe a larger step only after a calm stretch
                step = min(step * 2.0, 1e6)
                clean_accepts = 0
        else:
            clean_accepts = 0

    grad_norm = max(np.abs(grad_w).max(initial=0.0), np.abs(grad_b).max(initial=0.0))
    return LinearModel(
        classes=classes,
        weights=weights,
        bias=bias,
        lam=lam,
        iterations=iterations,
        final_objective=obj,
        gradient_norm=float(grad_norm),
    )


def accuracy(model: "LinearModel | MajorityModel", x: Matrix, labels: Sequence[str]) -> float:
    predicted = model.predict(x)
    return sum(p == g for p, g in zip(predicted, labels)) / len(labels)


def tune_lambda(
    x_train: Matrix,
    labels_train: Sequence[str],
    x_dev: Matrix,
    labels_dev: Sequence[str],
    grid: Sequence[float] = DEFAULT_LAMBDA_GRID,
) -> tuple[float, LinearModel]:
    """Pick the grid value maximizing dev accuracy; ties go to the larger lam.

    Returns the winning lam together with its already-trained model so the
    caller never retrains on the same partition.
    """
    if not grid:
        raise InputError("lambda grid is empty")
    best: tuple[float, float, LinearModel] | None = None
    for lam in sorted(grid):
        model = train(x_train, labels_train, lam)
        acc = accuracy(model, x_dev, labels_dev)
        if best is None or acc >= best[0]:  # >= prefers larger lam on ties
            best = (acc, lam, model)
    _, lam, model = best
    return lam, model


@dataclass
class MajorityModel:
    majority_class: str
    classes: list[str] = field(default_factory=list)
    tie_break: str = "lexicographic-smallest"

    @classmethod
    def fit(cls, labels: Sequence[str]) -> "MajorityModel":
        if not labels:
            raise DegenerateDataError("no training labels")
        counts = Counter(labels)
        top = max(counts.values())
        winner = min(c for c, n in counts.items() if n == top)
        return cls(majority_class=winner, classes=sorted(counts))

    def predict(self, x: Matrix) -> list[str]:
        return [self.majority_class] * x.shape[0]
