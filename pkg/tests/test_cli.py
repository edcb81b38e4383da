from __future__ import annotations

import json

import pytest

from trollbench.cli import main
from trollbench.corpus import read_snippets
from trollbench.schema import write_annotations
from trollbench.synthetic import synthetic_corpus, write_synthetic


@pytest.fixture()
def dump_file(tmp_path):
    lines = []
    for t in range(3):
        rows = [
            (f"t1_{t}root", f"t3_post{t}", "first comment in the thread"),
            (f"t1_{t}att", f"t1_{t}root", "a rather provocative remark"),
            (f"t1_{t}rep", f"t1_{t}att", "do not feed the troll"),
        ]
        for k, (cid, parent, body) in enumerate(rows):
            lines.append(
                json.dumps(
                    {
                        "id": cid.removeprefix("t1_"),
                        "parent_id": parent,
                        "link_id": f"t3_post{t}",
                        "author": "someone",
                        "body": body,
                        "created_utc": 100 * t + k,
                    }
                )
            )
    path = tmp_path / "dump.jsonl"
    path.write_text("\n".join(lines) + "\n")
    return path


def test_ingest_then_extract(dump_file, tmp_path, capsys):
    threads_db = tmp_path / "threads.db"
    snippets_out = tmp_path / "snippets.jsonl"
    assert main(["ingest", "--dump", str(dump_file), "--format", "reddit-jsonl",
                 "--out", str(threads_db)]) == 0
    assert "parsed 9 comments" in capsys.readouterr().out
    assert main(["extract", "--threads", str(threads_db), "--out", str(snippets_out)]) == 0
    snippets = read_snippets(snippets_out)
    assert len(snippets) == 3
    assert {s.attempt.id for s in snippets} == {"0att", "1att", "2att"}


def test_extract_with_custom_trigger(dump_file, tmp_path):
    threads_db = tmp_path / "threads.db"
    snippets_out = tmp_path / "snips.jsonl"
    main(["ingest", "--dump", str(dump_file), "--out", str(threads_db)])
    main(["extract", "--threads", str(threads_db), "--out", str(snippets_out),
          "--trigger", "feed", "--max-dist", "0"])
    snippets = read_snippets(snippets_out)
    assert len(snippets) == 3  # "feed" appears in every reply


def test_kappa_command(tmp_path, capsys):
    snippets, gold = synthetic_corpus()
    ann_dir = tmp_path / "ann"
    ann_dir.mkdir()
    subset = [gold[s.snippet_id] for s in snippets[:8]]
    import dataclasses

    write_annotations([dataclasses.replace(a, annotator_id="a") for a in subset],
                      ann_dir / "a.jsonl")
    write_annotations([dataclasses.replace(a, annotator_id="b") for a in subset],
                      ann_dir / "b.jsonl")
    assert main(["kappa", "--annotations", str(ann_dir), "--annotators", "a,b"]) == 0
    out = capsys.readouterr().out
    assert "kappa" in out
    # identical annotators agree perfectly
    assert out.count("1.0000") >= 4


def test_evaluate_command(tmp_path, capsys):
    corpus_dir = tmp_path / "corpus"
    write_synthetic(corpus_dir)
    report_dir = tmp_path / "report"
    code = main(
        [
            "evaluate",
            "--snippets", str(corpus_dir / "snippets.jsonl"),
            "--annotations", str(corpus_dir / "annotations"),
            "--cells", "majority,all",
            "--groups", "swr,cue,pol",
            "--seed", "13",
            "--embeddings", str(corpus_dir / "embeddings" / "synthetic_25d.txt"),
            "--out", str(report_dir),
        ]
    )
    assert code == 0
    assert (report_dir / "table.tsv").exists()
    assert (report_dir / "table.txt").exists()
    assert (report_dir / "errors.jsonl").exists()
    out = capsys.readouterr().out
    assert "total accuracy" in out


def test_evaluate_rejects_unknown_group(tmp_path, capsys):
    corpus_dir = tmp_path / "corpus"
    write_synthetic(corpus_dir)
    code = main(
        [
            "evaluate",
            "--snippets", str(corpus_dir / "snippets.jsonl"),
            "--annotations", str(corpus_dir / "annotations"),
            "--groups", "bogus",
        ]
    )
    assert code == 2
