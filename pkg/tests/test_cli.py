import json

import pytest

from topicsum import config
from topicsum.cli import main
from topicsum.corpus_io import load_corpus


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def read_jsonl(path):
    return [json.loads(line) for line in open(path, encoding="utf-8") if line.strip()]


@pytest.fixture
def workdir(tmp_path, capsys):
    assert run(capsys, "fixture", "--seed", 0, "--output", tmp_path / "fix.jsonl")[0] == 0
    code, out, _ = run(capsys, "fit", "--input", tmp_path / "fix.jsonl", "--model", tmp_path / "m.json",
                       "--topics", tmp_path / "t.json")
    assert code == 0 and "6 topics" in out
    return tmp_path


def test_terms_single_topic(workdir, capsys):
    code, out, _ = run(capsys, "terms", "--model", workdir / "m.json", "--topics", workdir / "t.json",
                       "--topic", "Sports", "--n", 10)
    assert code == 0
    rows = [json.loads(l) for l in out.splitlines()]
    assert len(rows) == 1 and rows[0]["topic"] == "Sports" and len(rows[0]["terms"]) == 10


def test_score_emits_reports_and_footer(workdir, capsys):
    pairs = workdir / "pairs.jsonl"
    pairs.write_text(
        json.dumps({"id": "p1", "summary": "The game and the team won.", "topic": "Sports"}) + "\n"
        + json.dumps({"id": "p2", "summary": "zzzz", "topic": "Sports"}) + "\n"
    )
    code, out, err = run(capsys, "score", "--model", workdir / "m.json", "--topics", workdir / "t.json", "--pairs", pairs)
    assert code == 0
    rows = [json.loads(l) for l in out.splitlines()]
    assert rows[0]["id"] == "p1" and rows[0]["stas"] == 1.0 and rows[0]["relevant"] is True
    assert rows[1] == {"id": "p2", "topic": "Sports", "error": "no in-vocabulary content"}
    assert rows[2] == {"mean_stas": 1.0, "count": 1}
    assert "STAS (%)" in err and "100.00" in err


def test_tag_and_prepend(workdir, capsys):
    run(capsys, "terms", "--model", workdir / "m.json", "--topics", workdir / "t.json", "--n", 5, "-o", workdir / "terms.jsonl")
    code, _, _ = run(capsys, "tag", "--input", workdir / "fix.jsonl", "--terms", workdir / "terms.jsonl",
                     "--prepend", "-o", workdir / "tagged.jsonl")
    assert code == 0
    rows = read_jsonl(workdir / "tagged.jsonl")
    assert rows[0]["method"] == "prepend+tag" and rows[0]["text"].startswith("Politics | ")
    assert rows[0]["text"].count("[TAG]") == 2 * rows[0]["tag_count"] > 0
    assert set(rows[0]) == {"id", "text", "topic", "summary", "method", "tag_count"}
    code, out, _ = run(capsys, "prepend", "--input", workdir / "fix.jsonl", "--topic", "Space")
    assert code == 0 and json.loads(out.splitlines()[0])["text"].startswith("Space | ")
    # tagging already-tagged text is a runtime failure
    code, _, err = run(capsys, "tag", "--input", workdir / "tagged.jsonl", "--terms", workdir / "terms.jsonl")
    assert code == 1 and "already tagged" in err


def test_compile_twice_byte_identical(workdir, capsys):
    outs = []
    for name in ("a", "b"):
        code, _, _ = run(capsys, "compile", "--input", workdir / "fix.jsonl", "--model", workdir / "m.json",
                         "--topics", workdir / "t.json", "--seed", 7, "-o", workdir / f"{name}.jsonl",
                         "--ratios", "0.8,0.1,0.1")
        assert code == 0
        outs.append((workdir / f"{name}.jsonl").read_bytes())
    assert outs[0] == outs[1]
    stats = json.loads((workdir / "a.jsonl.stats.json").read_text())
    assert stats["pairs_formed"] * 2 == len(read_jsonl(workdir / "a.jsonl"))
    split_sizes = [len(read_jsonl(workdir / f"a.{p}.jsonl")) for p in ("train", "val", "test")]
    assert sum(split_sizes) == 2 * stats["pairs_formed"]
    assert (workdir / "a.train.jsonl").read_bytes() == (workdir / "b.train.jsonl").read_bytes()


def test_split_subcommand(workdir, capsys):
    run(capsys, "compile", "--input", workdir / "fix.jsonl", "--model", workdir / "m.json",
        "--topics", workdir / "t.json", "-o", workdir / "s.jsonl")
    code, out, _ = run(capsys, "split", "--input", workdir / "s.jsonl", "--output-dir", workdir / "sp",
                       "--ratios", "0.8,0.1,0.1", "--seed", 1)
    assert code == 0 and out.strip() == "train=120 val=16 test=14"


def test_rouge_subcommand(tmp_path, capsys):
    pairs = tmp_path / "r.jsonl"
    pairs.write_text(json.dumps({"id": "x", "candidate": "the cat sat", "reference": "the cat"}) + "\n")
    code, out, err = run(capsys, "rouge", "--pairs", pairs)
    rows = [json.loads(l) for l in out.splitlines()]
    assert code == 0 and rows[0]["rouge1"]["f1"] == pytest.approx(0.8)
    assert rows[1]["count"] == 1 and "R-1" in err and "80.00" in err


def test_usage_errors_exit_2(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compile", "--input", "x"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["score", "--model", "m", "--topics", "t", "--pairs", str(tmp_path / "missing.jsonl")])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["split", "--input", "x", "--output-dir", "d", "--ratios", "0.5,0.5,0.5"])
    assert exc.value.code == 2
    assert main([]) == 2


def test_runtime_error_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": "a", "text": "x y", "topic": "T"}\n{"id": "a", "text": "z w", "topic": "T"}\n')
    code, _, err = run(capsys, "fit", "--input", bad, "--model", tmp_path / "m.json", "--topics", tmp_path / "t.json")
    assert code == 1 and "duplicate id a at line 2" in err
    assert not (tmp_path / "m.json").exists()


def test_fit_min_topic_docs_and_exclusion(workdir, capsys):
    code, out, _ = run(capsys, "fit", "--input", workdir / "fix.jsonl", "--model", workdir / "m2.json",
                       "--topics", workdir / "t2.json", "--exclude-topics", "Movies,Space")
    assert code == 0 and "4 topics" in out
    code, _, err = run(capsys, "fit", "--input", workdir / "fix.jsonl", "--model", workdir / "m3.json",
                       "--topics", workdir / "t3.json", "--min-topic-docs", 26)
    assert code == 1 and "at least 26" in err


def test_show_defaults(capsys):
    code, out, _ = run(capsys, "--show-defaults")
    assert code == 0 and json.loads(out) == json.loads(json.dumps(config.defaults()))


def test_fixture_subcommand_round_trips(tmp_path, capsys):
    run(capsys, "fixture", "--seed", 3, "-o", tmp_path / "f.jsonl")
    from topicsum.fixture import generate_fixture
    assert load_corpus(tmp_path / "f.jsonl") == generate_fixture(3)
