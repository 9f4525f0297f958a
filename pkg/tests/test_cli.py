from __future__ import annotations

import json

import pytest

from transversal.cli import main
from transversal.core import parse_tgc


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fig1b(tmp_path, capsys):
    path = tmp_path / "fig1b.tgc"
    assert run(capsys, "gen", "--family", "no-r2m-fig1b", "--n", "6", "-o", str(path))[0] == 0
    return path


def test_gen_writes_tgc(fig1b):
    c = parse_tgc(fig1b.read_text())
    assert c.n == 6 and c.m == 6


def test_gen_to_stdout_with_params(capsys):
    code, out, _ = run(capsys, "gen", "--family", "hst", "--n", "6", "--t", "3")
    assert code == 0
    c = parse_tgc(out)
    assert sum(1 for g in c if g.num_edges() == 9) == 3


def test_gen_param_option(capsys):
    code, out, _ = run(capsys, "gen", "--family", "near-split-b", "--n", "6", "--param", "pair=3,4")
    assert code == 0 and all(g.has_edge(3, 4) for g in parse_tgc(out))


def test_gen_corollary_requires_variant(capsys):
    code, _, err = run(capsys, "gen", "--family", "corollary", "--n", "7")
    assert code == 2 and "--variant" in err


def test_gen_parity_error(capsys):
    code, _, err = run(capsys, "gen", "--family", "half-split", "--n", "6")
    assert code == 2 and "error" in err


def test_classify_and_certify(fig1b, capsys):
    code, out, _ = run(capsys, "classify", str(fig1b), "--json")
    assert code == 0 and json.loads(out)["tag"] == "no-r2m-fig1b"
    code, out, _ = run(capsys, "certify", str(fig1b), "--json")
    assert code == 0
    assert json.loads(out)["certificate"]["reason"] == "NoTwoDisjointRainbowCrossEdges"


def test_solve_absent_exit_code(fig1b, capsys):
    code, out, _ = run(capsys, "solve", "--target", "hamilton-cycle", str(fig1b), "--json")
    assert code == 1 and json.loads(out) == {"present": False, "target": "hamilton-cycle", "walk": None}


def test_solve_path_both_methods(tmp_path, capsys):
    path = tmp_path / "s.tgc"
    assert run(capsys, "sample", "--n", "7", "--m", "6", "--min-degree", "3", "--seed", "5", "-o", str(path))[0] == 0
    for method in ("exact", "constructive"):
        code, out, _ = run(capsys, "solve", "--target", "hamilton-path", "--method", method, str(path), "--json")
        data = json.loads(out)
        assert code == 0 and data["present"] and sorted(data["walk"]["colors"]) == list(range(6))


def test_solve_longest_rainbow_cycle(tmp_path, capsys):
    path = tmp_path / "k.tgc"
    path.write_text("tgc 1\nn 4\nm 4\n" + "".join(f"c {i}\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n" for i in range(4)))
    code, out, _ = run(capsys, "solve", "--target", "longest-rainbow-cycle", str(path))
    assert code == 0 and out.startswith("present")


def test_classify_unknown_exit_code(tmp_path, capsys):
    path = tmp_path / "k.tgc"
    path.write_text("tgc 1\nn 3\nm 3\n" + "".join(f"c {i}\n0 1\n0 2\n1 2\n" for i in range(3)))
    assert run(capsys, "classify", str(path))[0] == 1
    assert run(capsys, "certify", str(path))[0] == 1


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.tgc"
    path.write_text("tgc 1\nn 3\nm 1\nc 0\n0 3\n")
    code, _, err = run(capsys, "classify", str(path))
    assert code == 2 and "line 5" in err


def test_missing_file_exit_code(capsys):
    assert run(capsys, "classify", "/nonexistent/file.tgc")[0] == 2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["solve", "--target", "nope", "x"])
    assert info.value.code == 2


def test_verify_campaigns(capsys):
    code, out, _ = run(capsys, "verify", "theorem1", "--n", "4", "--mode", "exhaustive", "--json")
    assert code == 0 and json.loads(out)["checked"] == 1000
    code, out, _ = run(capsys, "verify", "families", "--n", "5,6", "--json", "--no-elapsed")
    assert code == 0 and "elapsed_ms" not in json.loads(out)
    code, out, _ = run(capsys, "verify", "threshold", "--n", "4,5", "--count", "20", "--json")
    assert code == 0 and [r["parameters"]["n"] for r in json.loads(out)] == [4, 5]


def test_verify_text_output(capsys):
    code, out, _ = run(capsys, "verify", "theorem1", "--n", "5", "--count", "10", "--seed", "1")
    assert code == 0 and "[ok]" in out


def test_campaign_failure_exit_code(monkeypatch, capsys):
    from transversal import cli
    from transversal.harness import VerificationReport

    def failing(*args, **kwargs):
        return VerificationReport("theorem1", {"n": 5}, checked=1, failures=[{"index": 0}])

    monkeypatch.setattr(cli, "verify_theorem1", failing)
    code, out, _ = run(capsys, "verify", "theorem1", "--n", "5")
    assert code == 3 and "FAILED" in out
