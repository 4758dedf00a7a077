import csv
import json
from pathlib import Path

import pytest

from qcmatch.cli import (EXIT_CHECK, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE,
                         build_parser, main)
from qcmatch.graph import generate_perfect_matching_graph, graph_to_text

GOLDEN_HELP = Path(__file__).parent / "golden" / "cli_help.txt"


def run(args, monkeypatch, tmp_path):
    monkeypatch.setenv("QCMATCH_OUTDIR", str(tmp_path))
    return main(args)


def test_bound_solve_and_golden(monkeypatch, tmp_path, capsys):
    rc = run(["bound", "--variant", "tightened", "--n", "2", "--solve",
              "--golden"], monkeypatch, tmp_path)
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    assert "objective 0.482639" in out


def test_bound_franking_golden(monkeypatch, tmp_path):
    assert run(["bound", "--variant", "franking", "--n", "2", "--solve",
                "--golden"], monkeypatch, tmp_path) == EXIT_OK


def test_bound_usage_errors(monkeypatch, tmp_path):
    k_with_ranking = run(["bound", "--variant", "ranking", "--n", "2",
                          "--k", "2"], monkeypatch, tmp_path)
    assert k_with_ranking == EXIT_USAGE
    assert run(["bound", "--variant", "oddgirth", "--n", "4", "--k", "1"],
               monkeypatch, tmp_path) == EXIT_USAGE
    assert run(["bound", "--variant", "oddgirth", "--n", "4"],
               monkeypatch, tmp_path) == EXIT_USAGE
    # simple-variant values are unpublished: refuse golden
    assert run(["bound", "--variant", "ranking", "--n", "2", "--solve",
                "--golden"], monkeypatch, tmp_path) == EXIT_USAGE
    assert run(["bound", "--variant", "tightened", "--n", "21", "--solve",
                "--golden"], monkeypatch, tmp_path) == EXIT_USAGE


def test_bound_export(monkeypatch, tmp_path):
    target = tmp_path / "m.lp"
    rc = run(["bound", "--variant", "franking", "--n", "1",
              "--export", str(target)], monkeypatch, tmp_path)
    assert rc == EXIT_OK
    assert target.read_text().startswith("\\ franking_n1")
    target2 = tmp_path / "m.mps"
    rc = run(["bound", "--variant", "franking", "--n", "1", "--format", "mps",
              "--export", str(target2)], monkeypatch, tmp_path)
    assert rc == EXIT_OK
    assert target2.read_text().startswith("NAME")


def test_simulate_writes_csv_and_enforces_bound(monkeypatch, tmp_path):
    rc = run(["simulate", "--kind", "ranking", "--pairs", "2", "--exact",
              "--all-graphs", "--bound", "0.5"], monkeypatch, tmp_path)
    assert rc == EXIT_OK
    rows = list(csv.DictReader(open(tmp_path / "simulate.csv")))
    assert rows and all(float(r["ratio"]) >= 0.5 for r in rows)
    rc = run(["simulate", "--kind", "ranking", "--pairs", "2", "--exact",
              "--all-graphs", "--bound", "0.99"], monkeypatch, tmp_path)
    assert rc == EXIT_MISMATCH


def test_simulate_worst_pi(monkeypatch, tmp_path):
    rc = run(["simulate", "--kind", "franking", "--pairs", "2", "--exact",
              "--worst-pi", "--all-graphs", "--bound", "0.5"],
             monkeypatch, tmp_path)
    assert rc == EXIT_OK


def test_simulate_graph_file(monkeypatch, tmp_path):
    g = generate_perfect_matching_graph(2, 0.5, 3)
    path = tmp_path / "g.txt"
    path.write_text(graph_to_text(g))
    rc = run(["simulate", "--kind", "ranking", "--graph", str(path),
              "--exact"], monkeypatch, tmp_path)
    assert rc == EXIT_OK


def test_simulate_usage_error(monkeypatch, tmp_path):
    assert run(["simulate", "--kind", "ranking", "--pairs", "2",
                "--worst-pi"], monkeypatch, tmp_path) == EXIT_USAGE


def test_verify_pass_and_report(monkeypatch, tmp_path):
    rc = run(["verify", "--only", "alternating-path,ranking-backup-rank",
              "--budget", "6", "--seed", "1", "--jobs", "1"],
             monkeypatch, tmp_path)
    assert rc == EXIT_OK
    report = json.loads((tmp_path / "verify.json").read_text())
    assert report["alternating-path"]["failures"] == []


def test_verify_unknown_name(monkeypatch, tmp_path, capsys):
    rc = run(["verify", "--only", "no-such-lemma"], monkeypatch, tmp_path)
    assert rc == EXIT_USAGE
    assert "registered" in capsys.readouterr().err


def test_verify_replay_missing_failure(monkeypatch, tmp_path):
    from qcmatch.lemmas import make_instance, witness_text
    inst = make_instance(3, "ranking")
    witness = tmp_path / "w.json"
    witness.write_text(witness_text("alternating-path", 3, inst, "synthetic"))
    rc = run(["verify", "--replay", str(witness)], monkeypatch, tmp_path)
    assert rc == EXIT_OK  # honest engine passes the synthetic witness


def full_help_text():
    import contextlib, io
    parser = build_parser()
    pieces = [parser.format_help()]
    for sub in ("bound", "simulate", "verify"):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf), contextlib.suppress(SystemExit):
            parser.parse_args([sub, "--help"])
        pieces.append(buf.getvalue())
    return "\n".join(pieces)


def test_help_is_golden():
    text = full_help_text()
    for flag in ("--variant", "--golden", "--worst-pi", "--budget", "--jobs",
                 "--replay", "--bound", "--export"):
        assert flag in text
    assert text == GOLDEN_HELP.read_text()


def test_exit_code_for_bad_flags():
    assert main(["bound", "--variant", "nope", "--n", "1"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE
