import json

import pytest

from normforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_and_verify_q8(tmp_path, capsys):
    f = tmp_path / "q8.json"
    code, out, _ = run(capsys, "formula", "generate", "Q8", "-o", str(f))
    assert code == 0 and "26 monomials, degree 3" in out
    code, out, _ = run(capsys, "formula", "verify", str(f))
    assert code == 0
    assert "26 monomials, degree 3" in out
    assert "symbolic: pass" in out and "oracle: pass" in out


def test_corrupted_file_fails(tmp_path, capsys):
    f = tmp_path / "q8.json"
    run(capsys, "formula", "generate", "Q8", "-o", str(f))
    d = json.loads(f.read_text())
    d["terms"][0]["c"] = str(-int(d["terms"][0]["c"]))
    f.write_text(json.dumps(d))
    code, out, _ = run(capsys, "formula", "verify", str(f))
    assert code == 1 and "symbolic: FAIL" in out


def test_generate_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "formula", "generate", "G27", "-o", str(a))
    run(capsys, "formula", "generate", "G27", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("spec,method", [("C8", "closed"), ("S3", "reduce"), ("D16", "pipeline"),
                                         ("Q8xC2", "closed"), ("G27", "pipeline")])
def test_generated_files_verify(tmp_path, capsys, spec, method):
    f = tmp_path / "f.json"
    assert run(capsys, "formula", "generate", spec, "--method", method, "-o", str(f))[0] == 0
    assert run(capsys, "formula", "verify", str(f))[0] == 0


def test_compose(tmp_path, capsys):
    outer, inner, out = tmp_path / "q8.json", tmp_path / "c4.json", tmp_path / "o.json"
    run(capsys, "formula", "generate", "Q8", "--method", "pipeline", "-o", str(outer))
    run(capsys, "formula", "generate", "C4", "-o", str(inner))
    code, _, _ = run(capsys, "formula", "compose", str(outer), "0", str(inner), "-o", str(out))
    assert code == 0
    code, text, _ = run(capsys, "formula", "verify", str(out))
    assert code == 0 and "658 monomials, degree 9" in text


def test_inspection_commands(tmp_path, capsys):
    f = tmp_path / "c9.json"
    run(capsys, "formula", "generate", "C9", "-o", str(f))
    code, out, _ = run(capsys, "formula", "stats", str(f))
    assert code == 0 and "22 monomials, degree 3" in out
    code, out, _ = run(capsys, "formula", "latex", str(f))
    assert code == 0 and "\\sigma" in out
    code, out, _ = run(capsys, "oracle", "check", str(f))
    assert code == 0 and "pass" in out


def test_other_commands(capsys):
    assert run(capsys, "identity", "check-85")[0] == 0
    code, out, _ = run(capsys, "fset", "Q16")
    assert code == 0 and out.strip() == "{C4, D8, Q8}"
    code, out, _ = run(capsys, "system", "show", "G27")
    assert code == 0 and out.strip().endswith("= 1")
    code, out, _ = run(capsys, "groups", "info", "Q8")
    assert code == 0 and "class: Extraspecial" in out
    code, out, _ = run(capsys, "groups", "list")
    assert code == 0 and "Q32" in out.split()
    code, out, _ = run(capsys, "pipeline", "run", "Q8")
    assert code == 0 and "y: 26 monomials" in out


def test_usage_errors(tmp_path, capsys):
    assert run(capsys, "formula", "generate", "Nope")[0] == 2
    assert run(capsys, "formula", "verify", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "identity", "check-99")[0] == 2
    assert run(capsys, "formula", "generate", "C128")[0] == 2


def test_max_order_env(monkeypatch, capsys):
    monkeypatch.setenv("NORMFORGE_MAX_ORDER", "8")
    assert run(capsys, "formula", "generate", "Q16")[0] == 2
