import json
import subprocess
import sys

import pytest

from mnov.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def last_json(text):
    return json.loads(text.strip().splitlines()[-1])


def test_normalize_magma(capsys):
    code, out, _ = run(capsys, "normalize", "--kind", "magma", "--expr", "(x >[a] x) >[a] x")
    assert code == 0
    doc = last_json(out)
    assert doc["terms"] == [{"coeff": "1", "term": "(x >[a] x) >[a] x"}]
    assert list(doc) == sorted(doc)


def test_normalize_magma_methods_agree(capsys):
    expr = "(y >[b] x) >[a] (x >[a] y)"
    _, a, _ = run(capsys, "normalize", "--kind", "magma", "--expr", expr, "--format", "json")
    _, b, _ = run(capsys, "normalize", "--kind", "magma", "--expr", expr, "--format", "json",
                  "--method", "solve")
    assert last_json(a)["terms"] == last_json(b)["terms"]


def test_normalize_tree(capsys):
    code, out, _ = run(capsys, "normalize", "--kind", "tree", "--dims", "0",
                       "--expr", "I((1),T[l|;]) X0 T[l|;]")
    assert code == 0
    terms = last_json(out)["terms"]
    assert [t["term"] for t in terms] == ["T[l|;I((0),T[l|;])]", "T[l|X0;I((1),T[l|;])]"]


def test_normalize_spde_word(capsys):
    code, out, _ = run(capsys, "normalize", "--kind", "spde", "--expr", "d0.D(1,0)", "--format", "text")
    assert code == 0
    assert out.strip() == "(0,0) + (1,0).d0"


def test_normalize_genidx(capsys):
    code, out, _ = run(capsys, "normalize", "--kind", "genidx", "--expr", "z{l;}^2 * z{l;a,a}", "--format", "json")
    ctx = last_json(out)["context"]
    assert ctx["populated"] is True
    assert ctx["generators_expression"] == [
        {"coeff": "1/2", "term": "l >[a] l >[a] l"},
        {"coeff": "-1/2", "term": "(l >[a] l) >[a] l"},
    ]


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "normalize", "--kind", "magma", "--expr", "x >[a (x")
    assert code == 2
    assert "line 1, column 7" in err


def test_context_error_exit_code(capsys):
    code, _, err = run(capsys, "normalize", "--kind", "spde", "--dims", "2", "--expr", "d0.D(1,0)")
    assert code == 2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nope"])
    assert info.value.code == 2


def test_table_rows(capsys):
    _, out, _ = run(capsys, "table", "--kind", "dims-gen", "--range", "1..7")
    rows = json.loads(out)["rows"]
    assert [r["count"] for r in rows] == [1, 1, 2, 3, 5, 7, 11]
    _, out, _ = run(capsys, "table", "--kind", "dims-normal", "--range", "1..7")
    assert [r["count"] for r in json.loads(out)["rows"]] == [1, 1, 2, 3, 5, 7, 11]
    _, out, _ = run(capsys, "table", "--kind", "dims-gen", "--range", "3..3", "--letters", "2")
    assert json.loads(out)["rows"][0]["count"] == 6


def test_table_csv(capsys):
    _, out, _ = run(capsys, "table", "--kind", "dims-spde", "--range", "1..2", "--dims", "0", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0].startswith("degree,")
    assert len(lines) == 3


def test_bad_range(capsys):
    code, _, _ = run(capsys, "table", "--kind", "dims-gen", "--range", "5..2")
    assert code == 2


def test_verify_rotation(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rotation", "--max-leaves", "7")
    assert code == 0
    check = json.loads(out)["checks"][0]
    assert check["details"]["shapes_by_leaves"] == [1, 1, 2, 5, 14, 42, 132]


def test_verify_freeness_gen_row(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "freeness-gen", "--max-degree", "5",
                       "--letters", "1", "--labels", "1")
    assert code == 0
    assert json.loads(out)["checks"][0]["details"]["dimensions"] == [1, 1, 2, 3, 5]


def test_verify_is_deterministic(capsys):
    args = ("verify", "--suite", "morphism", "--seed", "5", "--samples", "30")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_verify_failure_exit_code(capsys, monkeypatch):
    from mnov import verify

    def broken(**kw):
        c = verify.Check("always_fails")
        c.record(False, "forced")
        return verify._report("words", kw, [c])

    monkeypatch.setattr(verify, "suite_words", broken)
    code, out, _ = run(capsys, "verify", "--suite", "words")
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_map_tree(capsys):
    code, out, _ = run(capsys, "map-tree", "--expr", "I((1,1),T[l|;]) X0 T[l|;]")
    assert code == 0
    doc = last_json(out)
    assert doc["elementary_differential"] == [{"coeff": "1", "term": "z{l;} * z{l;(1,1).d0}"}]


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "mnov.cli", "table", "--kind", "dims-gen", "--range", "1..3"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["rows"][2]["count"] == 2
