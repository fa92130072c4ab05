import json
import shutil

import pytest

from blade.cli import main
from blade.fixtures import sample_course_dir, sample_manifest_path


def test_full_pipeline_on_bundled_course(tmp_path, capsys):
    """ingest -> index -> query succeeds offline on the bundled fixture."""
    assert main(["ingest", "--manifest", str(sample_manifest_path())]) == 0
    out = capsys.readouterr().out
    assert "course nlp-fundamentals" in out
    assert "3 resources" in out

    index_path = tmp_path / "course.blade"
    assert main(["index", "--manifest", str(sample_manifest_path()),
                 "--out", str(index_path), "--no-timestamps"]) == 0
    capsys.readouterr()

    assert main(["query", "--index", str(index_path), "what is jaccard similarity",
                 "--module", "module-2"]) == 0
    out = capsys.readouterr().out
    assert "[" in out and "]" in out  # at least one citation line
    assert "Lecture 7 transcript" in out or "Textbook" in out or "notebook" in out


def test_query_records_format(tmp_path, capsys):
    index_path = tmp_path / "course.blade"
    main(["index", "--manifest", str(sample_manifest_path()), "--out", str(index_path),
          "--no-timestamps"])
    capsys.readouterr()
    assert main(["query", "--index", str(index_path), "what is jaccard similarity",
                 "--format", "records"]) == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines() if l.strip()]
    kinds = [l["type"] for l in lines]
    assert kinds[0] == "response"
    assert kinds.count("citation") >= 1
    for line in lines:
        if line["type"] == "citation":
            assert set(line) == {"type", "unit_id", "display_label", "excerpt"}


def test_query_output_is_deterministic(tmp_path, capsys):
    index_path = tmp_path / "course.blade"
    main(["index", "--manifest", str(sample_manifest_path()), "--out", str(index_path),
          "--no-timestamps"])
    capsys.readouterr()
    main(["query", "--index", str(index_path), "compare jaccard and cosine"])
    first = capsys.readouterr().out
    main(["query", "--index", str(index_path), "compare jaccard and cosine"])
    assert capsys.readouterr().out == first


def test_ingest_missing_manifest_exit_2(capsys):
    assert main(["ingest", "--manifest", "missing.toml"]) == 2
    assert "missing.toml" in capsys.readouterr().err


def test_unknown_subcommand_exit_1(capsys):
    assert main(["frobnicate"]) == 1


def test_no_subcommand_prints_help(capsys):
    assert main([]) == 1
    assert "ingest" in capsys.readouterr().out


def test_ingest_dump_jsonl(tmp_path, capsys):
    dump = tmp_path / "units.jsonl"
    assert main(["ingest", "--manifest", str(sample_manifest_path()),
                 "--dump", str(dump)]) == 0
    lines = [json.loads(l) for l in dump.read_text().splitlines()]
    assert len(lines) == 53
    assert all({"id", "text", "locator", "topics"} <= set(l) for l in lines)


def test_study_analyze_writes_six_files(tmp_path, capsys):
    records_dir = tmp_path / "records"
    out_dir = tmp_path / "out"
    assert main(["study", "simulate", "--seed", "5", "--students", "24",
                 "--out", str(records_dir)]) == 0
    assert main(["study", "analyze", "--records", str(records_dir),
                 "--out", str(out_dir)]) == 0
    files = sorted(p.name for p in out_dir.iterdir())
    assert files == [
        "correct_distribution_lower.csv",
        "correct_distribution_mid.csv",
        "correct_distribution_overall.csv",
        "correct_distribution_upper.csv",
        "difficulty_index.csv",
        "score_distribution.csv",
    ]
    assert len(files) == 6
    out = capsys.readouterr().out
    assert "resource usage" in out


def test_study_analyze_per_quiz_bands_flag(tmp_path, capsys):
    records_dir = tmp_path / "records"
    main(["study", "simulate", "--seed", "8", "--students", "21", "--out", str(records_dir)])
    usage_csv = tmp_path / "usage.csv"
    assert main(["study", "analyze", "--records", str(records_dir),
                 "--out", str(tmp_path / "out"), "--per-quiz-bands",
                 "--usage-out", str(usage_csv)]) == 0
    assert len(list((tmp_path / "out").iterdir())) == 6
    lines = usage_csv.read_text().splitlines()
    assert lines[0] == "config,category,percent"
    assert len(lines) == 1 + 3 * 4  # three configs x four categories


def test_query_with_trained_weights_file(tmp_path, capsys):
    import json as json_mod

    from blade.index import default_weights

    index_path = tmp_path / "course.blade"
    main(["index", "--manifest", str(sample_manifest_path()), "--out", str(index_path),
          "--no-timestamps"])
    weights_path = tmp_path / "weights.json"
    weights_path.write_text(json_mod.dumps(default_weights().to_dict()), encoding="utf-8")
    capsys.readouterr()
    assert main(["query", "--index", str(index_path), "what is jaccard similarity",
                 "--weights", str(weights_path)]) == 0
    assert "[" in capsys.readouterr().out


def test_study_analyze_missing_records_exit_2(tmp_path):
    assert main(["study", "analyze", "--records", str(tmp_path / "none"),
                 "--out", str(tmp_path / "out")]) == 2


def test_index_embedder_mismatch_is_data_error(tmp_path, capsys):
    bogus = tmp_path / "bogus.blade"
    bogus.write_bytes(b"junk")
    assert main(["query", "--index", str(bogus), "q"]) == 2
