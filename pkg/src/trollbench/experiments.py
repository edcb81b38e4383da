"""5-fold cross-validation over the majority / single-group / all-features
experiment matrix, with Table-style reports and misclassification dumps.

Fold rotation: test = fold i, dev = fold (i+1) mod 5, train = the rest.
Predictions are pooled across the five rotations (every instance predicted
exactly once) and metrics computed once over the pool; the report header
records this choice.  The fold unit is the snippet, so response-level
instances never straddle folds.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .corpus import Snippet
from .features import (
    GROUPS,
    FeatureSpace,
    FeatureVector,
    Instance,
    Resources,
    build_space,
    featurize,
    to_matrix,
)
from .model import DEFAULT_LAMBDA_GRID, LinearModel, MajorityModel, tune_lambda
from .schema import ASPECT_CLASSES, SnippetAnnotation

N_FOLDS = 5
DEFAULT_SEED = 13


class ExperimentError(ValueError):
    pass


@dataclass
class FoldPlan:
    seed: int
    assignment: dict[str, int]  # snippet_id -> fold

    def fold_of(self, snippet_id: str) -> int:
        return self.assignment[snippet_id]


def make_folds(snippets: Sequence[Snippet], seed: int = DEFAULT_SEED) -> FoldPlan:
    """Seeded shuffle then round-robin assignment; deterministic per input."""
    ids = [s.snippet_id for s in snippets]
    if len(ids) < N_FOLDS:
        raise ExperimentError(f"need at least {N_FOLDS} snippets, got {len(ids)}")
    shuffled = list(ids)
    random.Random(seed).shuffle(shuffled)
    return FoldPlan(seed=seed, assignment={sid: k % N_FOLDS for k, sid in enumerate(shuffled)})


def build_instances(
    snippets: Sequence[Snippet],
    gold: dict[str, SnippetAnnotation],
    task: str,
) -> list[Instance]:
    """One labeled instance per attempt (I, D) or per response (R, B)."""
    instances: list[Instance] = []
    for snippet in snippets:
        ann = gold.get(snippet.snippet_id)
        if ann is None or ann.discarded or ann.attempt is None:
            continue
        if task == "I":
            instances.append(Instance(snippet, None, ann.attempt.intention.value))
        elif task == "D":
            instances.append(Instance(snippet, None, ann.attempt.disclosure.value))
        else:
            by_id = {r.response_comment_id: r for r in ann.responses}
            for k, response in enumerate(snippet.responses):
                label_rec = by_id.get(response.id)
                if label_rec is None:
                    continue
                label = label_rec.interpretation.value if task == "R" else label_rec.strategy.value
                instances.append(Instance(snippet, k, label))
    return instances


@dataclass
class Prediction:
    instance: Instance
    fold: int
    gold: str
    predicted: str
    vector: Optional[FeatureVector] = None


@dataclass
class CellResult:
    task: str
    cell: str  # "majority", "single:<group>" or "all"
    groups: tuple[str, ...]
    predictions: list[Prediction]
    models: dict[int, LinearModel] = field(default_factory=dict)
    spaces: dict[int, FeatureSpace] = field(default_factory=dict)
    lambdas: dict[int, float] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    def pooled(self) -> tuple[list[str], list[str]]:
        golds = [p.gold for p in self.predictions]
        preds = [p.predicted for p in self.predictions]
        return golds, preds

    def accuracy(self) -> float:
        golds, preds = self.pooled()
        return sum(g == p for g, p in zip(golds, preds)) / len(golds)


def run_cell(
    task: str,
    groups: Optional[Iterable[str]],
    plan: FoldPlan,
    snippets: Sequence[Snippet],
    gold: dict[str, SnippetAnnotation],
    resources: Resources,
    lambda_grid: Sequence[float] = DEFAULT_LAMBDA_GRID,
    extras: tuple[str, ...] = (),
    keep_vectors: bool = False,
) -> CellResult:
    """Run one experiment cell; ``groups=None`` selects the majority baseline."""
    instances = build_instances(snippets, gold, task)
    if not instances:
        raise ExperimentError(f"no labeled instances for task {task}")
    majority = groups is None
    group_tuple = () if majority else tuple(g for g in GROUPS if g in set(groups))
    cell_name = "majority" if majority else (
        f"single:{group_tuple[0]}" if len(group_tuple) == 1 else "all"
    )
    result = CellResult(task=task, cell=cell_name, groups=group_tuple, predictions=[])

    for fold in range(N_FOLDS):
        dev_fold = (fold + 1) % N_FOLDS
        test = [i for i in instances if plan.fold_of(i.snippet.snippet_id) == fold]
        dev = [i for i in instances if plan.fold_of(i.snippet.snippet_id) == dev_fold]
        tr = [
            i for i in instances
            if plan.fold_of(i.snippet.snippet_id) not in (fold, dev_fold)
        ]
        if not test:
            continue
        if not tr:
            raise ExperimentError(f"fold {fold}: empty training partition for task {task}")

        train_labels = [i.label for i in tr]
        all_classes = {i.label for i in instances}
        missing = sorted(all_classes - set(train_labels))
        if missing:
            result.flags.append(
                f"task {task} cell {cell_name} fold {fold}: classes absent from training: {missing}"
            )

        if majority:
            baseline = MajorityModel.fit(train_labels)
            for inst in test:
                result.predictions.append(
                    Prediction(inst, fold, inst.label, baseline.majority_class)
                )
            continue

        space, train_vectors = build_space(tr, task, group_tuple, resources, extras)
        x_train = to_matrix(train_vectors, space)
        size_before = space.sparse_size
        if len(set(train_labels)) < 2:
            # degenerate partition: behave like the majority baseline and say so
            result.flags.append(
                f"task {task} cell {cell_name} fold {fold}: single-class training partition"
            )
            only = train_labels[0]
            for inst in test:
                result.predictions.append(Prediction(inst, fold, inst.label, only))
            continue

        dev_vectors = [
            featurize(i.snippet, task, i.response_index, space, group_tuple, resources)
            for i in dev
        ]
        x_dev = to_matrix(dev_vectors, space)
        lam, model = tune_lambda(
            x_train, train_labels, x_dev, [i.label for i in dev], lambda_grid
        )
        test_vectors = [
            featurize(i.snippet, task, i.response_index, space, group_tuple, resources)
            for i in test
        ]
        if space.sparse_size != size_before:
            raise ExperimentError("frozen feature space grew during test featurization")
        x_test = to_matrix(test_vectors, space)
        predicted = model.predict(x_test)
        for inst, vec, pred in zip(test, test_vectors, predicted):
            result.predictions.append(
                Prediction(inst, fold, inst.label, pred, vec if keep_vectors else None)
            )
        result.models[fold] = model
        result.spaces[fold] = space
        result.lambdas[fold] = lam

    result.predictions.sort(key=lambda p: p.instance.instance_id)
    return result


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float


@dataclass
class MetricsReport:
    per_class: dict[str, ClassMetrics]
    accuracy: float
    weighted_f1: float


def metrics(
    gold: Sequence[str], predicted: Sequence[str], class_set: Iterable[str]
) -> MetricsReport:
    """Per-class precision/recall/F1 with the zero-denominator-is-zero rule."""
    if len(gold) != len(predicted):
        raise ExperimentError(f"length mismatch: {len(gold)} gold vs {len(predicted)} predicted")
    classes = list(class_set)
    per_class: dict[str, ClassMetrics] = {}
    correct = sum(g == p for g, p in zip(gold, predicted))
    for cls in classes:
        tp = sum(1 for g, p in zip(gold, predicted) if g == cls and p == cls)
        fp = sum(1 for g, p in zip(gold, predicted) if g != cls and p == cls)
        fn = sum(1 for g, p in zip(gold, predicted) if g == cls and p != cls)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[cls] = ClassMetrics(precision, recall, f1)
    n = len(gold)
    weights = {cls: sum(1 for g in gold if g == cls) for cls in classes}
    weighted_f1 = (
        sum(per_class[c].f1 * weights[c] for c in classes) / n if n else 0.0
    )
    return MetricsReport(per_class=per_class, accuracy=correct / n if n else 0.0, weighted_f1=weighted_f1)


def total_accuracy(per_task: dict[str, CellResult]) -> float:
    """Pooled correctness over all four aspects' instances."""
    missing = [t for t in ("I", "D", "R", "B") if t not in per_task]
    if missing:
        raise ExperimentError(f"total accuracy needs all four tasks; missing {missing}")
    correct = 0
    total = 0
    for result in per_task.values():
        golds, preds = result.pooled()
        correct += sum(g == p for g, p in zip(golds, preds))
        total += len(golds)
    return correct / total


@dataclass
class ErrorRecord:
    snippet_id: str
    response_comment_id: Optional[str]
    task: str
    gold: str
    predicted: str
    text: str
    top_features: list[tuple[str, float]]

    def to_record(self) -> dict:
        return {
            "snippet_id": self.snippet_id,
            "response_comment_id": self.response_comment_id,
            "task": self.task,
            "gold": self.gold,
            "predicted": self.predicted,
            "text": self.text,
            "top_features": [[name, weight] for name, weight in self.top_features],
        }


def dump_errors(cell_results: Iterable[CellResult], k: int = 10) -> list[ErrorRecord]:
    """Misclassified instances with the k highest-weight active features
    for the predicted class (supports downstream error analysis)."""
    records: list[ErrorRecord] = []
    for result in cell_results:
        for pred in result.predictions:
            if pred.gold == pred.predicted:
                continue
            inst = pred.instance
            source = (
                inst.snippet.attempt
                if inst.response_index is None
                else inst.snippet.responses[inst.response_index]
            )
            top: list[tuple[str, float]] = []
            model = result.models.get(pred.fold)
            space = result.spaces.get(pred.fold)
            if model is not None and space is not None and pred.vector is not None:
                class_row = model.classes.index(pred.predicted) if pred.predicted in model.classes else None
                if class_row is not None:
                    active = [(i, v) for i, v in pred.vector.sparse if v != 0.0]
                    active += [
                        (space.sparse_size + d, float(v))
                        for d, v in enumerate(pred.vector.dense)
                        if v != 0.0
                    ]
                    weighted = [
                        (space.feature_name(i), float(model.weights[class_row, i]))
                        for i, _ in active
                    ]
                    weighted.sort(key=lambda t: (-t[1], t[0]))
                    top = weighted[:k]
            records.append(
                ErrorRecord(
                    snippet_id=inst.snippet.snippet_id,
                    response_comment_id=(
                        None
                        if inst.response_index is None
                        else inst.snippet.responses[inst.response_index].id
                    ),
                    task=result.task,
                    gold=pred.gold,
                    predicted=pred.predicted,
                    text=source.body,
                    top_features=top,
                )
            )
    return records


@dataclass
class EvalReport:
    seed: int
    cells: list[str]  # column order: "majority", "single:<g>"..., "all"
    results: dict[tuple[str, str], CellResult]  # (task, cell) -> result
    metrics: dict[tuple[str, str], MetricsReport]
    totals: dict[str, float]  # cell -> total accuracy
    class_sizes: dict[str, dict[str, float]]  # task -> class -> gold %
    flags: list[str]
    lambda_grid: tuple[float, ...]
    errors: list[ErrorRecord] = field(default_factory=list)


def evaluate_matrix(
    snippets: Sequence[Snippet],
    gold: dict[str, SnippetAnnotation],
    cells: Sequence[str] = ("majority", "single", "all"),
    groups: Sequence[str] = GROUPS,
    seed: int = DEFAULT_SEED,
    resources: Optional[Resources] = None,
    lambda_grid: Sequence[float] = DEFAULT_LAMBDA_GRID,
    extras: tuple[str, ...] = (),
    top_k_errors: int = 10,
) -> EvalReport:
    """Run the requested cells over all four tasks and assemble the report."""
    if resources is None:
        resources = Resources()
    groups = tuple(g for g in GROUPS if g in set(groups))
    plan = make_folds(snippets, seed)

    column_cells: list[str] = []
    if "majority" in cells:
        column_cells.append("majority")
    if "single" in cells:
        column_cells.extend(f"single:{g}" for g in groups)
    if "all" in cells:
        column_cells.append("all")
    if not column_cells:
        raise ExperimentError(f"no recognized cells in {cells!r}")

    results: dict[tuple[str, str], CellResult] = {}
    reports: dict[tuple[str, str], MetricsReport] = {}
    flags: list[str] = []
    class_sizes: dict[str, dict[str, float]] = {}

    for task in ("I", "D", "R", "B"):
        class_names = [c.value for c in ASPECT_CLASSES[task]]
        instances = build_instances(snippets, gold, task)
        n = len(instances)
        class_sizes[task] = {
            cls: 100.0 * sum(1 for i in instances if i.label == cls) / n if n else 0.0
            for cls in class_names
        }
        for cell in column_cells:
            if cell == "majority":
                cell_groups = None
            elif cell == "all":
                cell_groups = groups
            else:
                cell_groups = (cell.split(":", 1)[1],)
            result = run_cell(
                task,
                cell_groups,
                plan,
                snippets,
                gold,
                resources,
                lambda_grid,
                extras,
                keep_vectors=(cell == "all"),
            )
            results[(task, cell)] = result
            golds, preds = result.pooled()
            reports[(task, cell)] = metrics(golds, preds, class_names)
            flags.extend(result.flags)

    totals = {
        cell: total_accuracy({task: results[(task, cell)] for task in ("I", "D", "R", "B")})
        for cell in column_cells
    }
    errors: list[ErrorRecord] = []
    if "all" in column_cells:
        errors = dump_errors(
            (results[(task, "all")] for task in ("I", "D", "R", "B")), top_k_errors
        )
    return EvalReport(
        seed=seed,
        cells=column_cells,
        results=results,
        metrics=reports,
        totals=totals,
        class_sizes=class_sizes,
        flags=flags,
        lambda_grid=tuple(lambda_grid),
        errors=errors,
    )


def _fmt(value: float) -> str:
    return f"{100.0 * value:.1f}"


_CELL_HEADERS = {"majority": "mjr", "all": "all"}


def _cell_header(cell: str) -> str:
    if cell in _CELL_HEADERS:
        return _CELL_HEADERS[cell]
    return cell.split(":", 1)[1]


def render_table_tsv(report: EvalReport) -> str:
    """Tab-separated table: per-class F1 under every cell, then R/P/F1 for
    the all-features cell, per-task accuracy rows, and total accuracy."""
    has_all = "all" in report.cells
    f1_cells = [c for c in report.cells if c != "all"]
    header = ["task", "class"] + [_cell_header(c) for c in f1_cells]
    if has_all:
        header += ["all_R", "all_P", "all_F1"]
    header.append("size")
    lines = ["\t".join(header)]
    for task in ("I", "D", "R", "B"):
        for cls in (c.value for c in ASPECT_CLASSES[task]):
            row = [task, cls]
            for cell in f1_cells:
                row.append(_fmt(report.metrics[(task, cell)].per_class[cls].f1))
            if has_all:
                m = report.metrics[(task, "all")].per_class[cls]
                row += [_fmt(m.recall), _fmt(m.precision), _fmt(m.f1)]
            row.append(_fmt(report.class_sizes[task][cls] / 100.0))
            lines.append("\t".join(row))
        acc_row = [task, "Accuracy"]
        for cell in f1_cells:
            acc_row.append(_fmt(report.metrics[(task, cell)].accuracy))
        if has_all:
            acc_row += ["-", "-", _fmt(report.metrics[(task, "all")].accuracy)]
        acc_row.append("-")
        lines.append("\t".join(acc_row))
    total_row = ["*", "TotalAccuracy"]
    for cell in f1_cells:
        total_row.append(_fmt(report.totals[cell]))
    if has_all:
        total_row += ["-", "-", _fmt(report.totals["all"])]
    total_row.append("-")
    lines.append("\t".join(total_row))
    return "\n".join(lines) + "\n"


def render_table_text(report: EvalReport) -> str:
    """Human-readable report with the provenance header."""
    out = [
        "trolling-aspect classification report",
        f"seed: {report.seed}",
        "folds: 5 (test = i, dev = (i+1) mod 5, train = rest)",
        "evaluation: predictions pooled over test folds, metrics computed once",
        f"lambda grid: {', '.join(f'{v:g}' for v in report.lambda_grid)}",
        "scores are x100, one decimal; per-class columns report F1",
        "",
    ]
    tsv = render_table_tsv(report)
    rows = [line.split("\t") for line in tsv.strip().split("\n")]
    widths = [max(len(row[k]) for row in rows) for k in range(len(rows[0]))]
    for row in rows:
        out.append("  ".join(cell.ljust(widths[k]) for k, cell in enumerate(row)).rstrip())
    if report.flags:
        out.append("")
        out.append("flags:")
        out.extend(f"  - {flag}" for flag in report.flags)
    return "\n".join(out) + "\n"


def write_report(report: EvalReport, out_dir: str | Path) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "table.tsv").write_text(render_table_tsv(report), encoding="utf-8")
    (out / "table.txt").write_text(render_table_text(report), encoding="utf-8")
    with open(out / "errors.jsonl", "w", encoding="utf-8") as fh:
        for record in report.errors:
            fh.write(json.dumps(record.to_record(), ensure_ascii=False) + "\n")
