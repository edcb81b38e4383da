"""Command line entry points: ingest, extract, kappa, evaluate, serve."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import corpus
from .agreement import format_kappa_table, pair_annotations
from .experiments import DEFAULT_SEED, evaluate_matrix, write_report
from .features import GROUPS, Resources
from .linguistics.analysis import AnnotationSidecar, Analyzer
from .linguistics.embeddings import EmbeddingTable
from .linguistics.lexicons import load_lexicons
from .schema import read_annotations
from .service import serve


def _cmd_ingest(args: argparse.Namespace) -> int:
    stats = corpus.ParseStats()
    with open(args.dump, "rb") as fh:
        comments = list(corpus.parse_dump(fh, args.format, stats))
    corpus.write_comments(comments, args.out)
    print(f"parsed {stats.parsed} comments ({stats.skipped} malformed lines skipped) -> {args.out}")
    return 0


def _cmd_extract(args: argparse.Namespace) -> int:
    comments = corpus.read_comments(args.threads)
    stats = corpus.ExtractStats()
    snippets = corpus.mine_snippets(comments, args.trigger, args.max_dist, stats)
    corpus.write_snippets(snippets, args.out)
    print(
        f"extracted {stats.extracted} snippets "
        f"(dropped: {stats.dropped_no_responses} without responses, "
        f"{stats.dropped_deleted_attempt} deleted attempts) -> {args.out}"
    )
    return 0


def _load_annotation_dir(directory: Path) -> dict[str, list]:
    by_annotator: dict[str, list] = {}
    for path in sorted(directory.glob("*.jsonl")):
        for ann in read_annotations(path):
            by_annotator.setdefault(ann.annotator_id, []).append(ann)
    return by_annotator


def _cmd_kappa(args: argparse.Namespace) -> int:
    by_annotator = _load_annotation_dir(Path(args.annotations))
    name_a, name_b = [a.strip() for a in args.annotators.split(",")]
    for name in (name_a, name_b):
        if name not in by_annotator:
            print(f"annotator {name!r} not found; have {sorted(by_annotator)}", file=sys.stderr)
            return 2
    paired = pair_annotations(by_annotator[name_a], by_annotator[name_b], name_a, name_b)
    print(format_kappa_table(paired.kappa_report(), name_a, name_b))
    if paired.no_overlap:
        print("warning: annotators share no snippets", file=sys.stderr)
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    snippets = corpus.read_snippets(args.snippets)
    by_annotator = _load_annotation_dir(Path(args.annotations))
    if args.gold_annotator not in by_annotator:
        print(
            f"gold annotator {args.gold_annotator!r} not found; have {sorted(by_annotator)}",
            file=sys.stderr,
        )
        return 2
    gold = {ann.snippet_id: ann for ann in by_annotator[args.gold_annotator]}

    sidecar = AnnotationSidecar.load(args.sidecar) if args.sidecar else None
    embeddings = EmbeddingTable.load(args.embeddings) if args.embeddings else None
    groups = tuple(g.strip() for g in args.groups.split(",")) if args.groups else GROUPS
    unknown = set(groups) - set(GROUPS)
    if unknown:
        print(f"unknown feature groups: {sorted(unknown)}", file=sys.stderr)
        return 2
    if embeddings is None and "glv" in groups:
        print("glv requested without --embeddings; dropping the glv group", file=sys.stderr)
        groups = tuple(g for g in groups if g != "glv")

    resources = Resources(
        analyzer=Analyzer(sidecar),
        lexicons=load_lexicons(args.lexicons) if args.lexicons else load_lexicons(),
        embeddings=embeddings,
    )
    extras = tuple(
        name
        for flag, name in ((args.with_parent, "context"), (args.with_attempt, "attempt"))
        if flag
    )
    report = evaluate_matrix(
        snippets,
        gold,
        cells=tuple(c.strip() for c in args.cells.split(",")),
        groups=groups,
        seed=args.seed,
        resources=resources,
        extras=extras,
    )
    write_report(report, args.out)
    print(f"report written to {args.out}")
    for cell, total in report.totals.items():
        print(f"  total accuracy [{cell}]: {100.0 * total:.1f}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    serve(
        snippets_path=args.snippets,
        store_dir=args.store,
        port=args.port,
        double_quota=args.double_quota,
        static_dir=args.static,
        host=args.host,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trollbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="parse a raw comment dump into normalized comments")
    p_ingest.add_argument("--dump", required=True)
    p_ingest.add_argument("--format", default="reddit-jsonl", choices=sorted(corpus.FORMATS))
    p_ingest.add_argument("--out", required=True)
    p_ingest.set_defaults(func=_cmd_ingest)

    p_extract = sub.add_parser("extract", help="mine suspected-trolling snippets")
    p_extract.add_argument("--threads", required=True, help="normalized comments file from ingest")
    p_extract.add_argument("--out", required=True)
    p_extract.add_argument("--trigger", default="troll")
    p_extract.add_argument("--max-dist", type=int, default=1)
    p_extract.set_defaults(func=_cmd_extract)

    p_kappa = sub.add_parser("kappa", help="inter-annotator agreement table")
    p_kappa.add_argument("--annotations", required=True, help="directory of *.jsonl annotation files")
    p_kappa.add_argument("--annotators", required=True, help="two ids, comma separated")
    p_kappa.set_defaults(func=_cmd_kappa)

    p_eval = sub.add_parser("evaluate", help="run the cross-validation experiment matrix")
    p_eval.add_argument("--snippets", required=True)
    p_eval.add_argument("--annotations", required=True, help="directory of *.jsonl annotation files")
    p_eval.add_argument("--gold-annotator", default="gold")
    p_eval.add_argument("--cells", default="majority,single,all")
    p_eval.add_argument("--groups", default=",".join(GROUPS))
    p_eval.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_eval.add_argument("--out", default="report")
    p_eval.add_argument("--embeddings", default=None, help="word-vector text file for the glv group")
    p_eval.add_argument("--lexicons", default=None, help="override the bundled lexicon directory")
    p_eval.add_argument("--sidecar", default=None, help="external linguistic annotations (jsonl)")
    p_eval.add_argument("--with-parent", action="store_true", help="concatenate context features")
    p_eval.add_argument("--with-attempt", action="store_true", help="concatenate attempt features for R/B")
    p_eval.set_defaults(func=_cmd_evaluate)

    p_serve = sub.add_parser("serve", help="run the annotation HTTP service")
    p_serve.add_argument("--snippets", required=True)
    p_serve.add_argument("--store", required=True)
    p_serve.add_argument("--port", type=int, default=8100)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--double-quota", type=int, default=100)
    p_serve.add_argument("--static", default=None, help="directory with the annotation UI bundle")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
