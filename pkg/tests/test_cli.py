from __future__ import annotations

import io
import json

import pytest

from planeaut.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def docs(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.startswith("{")]


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "(2X+Y^3, 3Y)")
    (d,) = docs(out)
    assert code == 0
    assert d["lf"] and d["semisimple"] and d["closed"] and d["in_S"]
    assert d["pseudo_eigenvalues"] == ["2/1", "3/1"]
    assert d["input"] == "(2X+Y^3, 3Y)"


def test_classify_henon(capsys):
    code, out, _ = run(capsys, "classify", "--check", "(Y, X+Y^2)")
    (d,) = docs(out)
    assert code == 0 and not d["lf"]
    assert d["dynamical_degree"] == "2/1" and d["fixed_scheme_length"] == 2
    assert d["checks"] and all(d["checks"].values())


def test_text_output(capsys):
    code, out, _ = run(capsys, "classify", "--text", "(X+1, 2Y)")
    assert code == 0 and "lf: true" in out and "semisimple: false" in out


def test_exit_codes(capsys):
    code, _, err = run(capsys, "classify", "(X^2, Y)")
    assert code == 3 and "NotAnAutomorphism" in err
    code, _, err = run(capsys, "classify", "(X*, Y)")
    assert code == 2 and "ParseError" in err
    code, _, err = run(capsys, "diagonalize", "(X+Y^2, Y)")
    assert code == 4 and "NotSemisimple" in err


def test_json_and_text_are_exclusive(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--json", "--text", "(X, Y)"])
    assert exc.value.code == 2


def test_transform_commands(capsys):
    code, out, _ = run(capsys, "degenerate", "(X+Y, Y)")
    (d,) = docs(out)
    assert code == 0
    assert d["family"] == "(X + t*Y, Y)" and d["limit"] == "(X, Y)" and d["limit_in_class"] is False

    code, out, _ = run(capsys, "conjugate", "(2X+Y^3, 3Y)", "(2X, 3Y+X^2)")
    (d,) = docs(out)
    assert code == 0 and d["verified"] and d["conjugator"]

    for cmd in ("diagonalize", "triangularize", "decompose", "invert"):
        code, out, _ = run(capsys, cmd, "(2X, 3Y+X^2)")
        (d,) = docs(out)
        assert code == 0 and d["verified"], cmd


def test_stdin_inputs(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("(X+Y, Y)\n\n(2X, 3Y)\n"))
    code, out, _ = run(capsys, "invert")
    assert code == 0 and len(docs(out)) == 2


def test_corpus_summary_and_determinism(capsys):
    code, first, _ = run(capsys, "corpus", "--seed", "1", "--count", "10")
    assert code == 0
    assert "lf_criteria_agree: 10/10" in first
    assert len(docs(first)) == 10
    _, second, _ = run(capsys, "corpus", "--seed", "1", "--count", "10")
    assert first.encode() == second.encode()


def test_corpus_rejects_zero_count(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["corpus", "--count", "0"])
    assert exc.value.code == 2
