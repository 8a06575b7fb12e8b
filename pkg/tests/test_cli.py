import io
import json

import pytest

from rellattice.cli import repl, run
from rellattice.fixtures import example_env


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_eval_join_table():
    code, out, _ = call("eval", "-q", "A & B")
    assert code == 0
    assert out == "x | y | z\n--+---+--\n1 | 2 | 4\n(1 row)\n"


def test_eval_formats():
    code, out, _ = call("eval", "-q", "A | B", "--format", "csv")
    assert code == 0 and out.splitlines() == ["y", "1", "2", "3"]
    code, out, _ = call("eval", "-q", "dee", "--format", "json")
    assert json.loads(out) == {"header": [], "rows": [[]]}


def test_eval_with_file(tmp_path):
    p = tmp_path / "edges.csv"
    p.write_text("src,dst\n1,2\n2,3\n", encoding="utf-8")
    code, out, _ = call("eval", "--no-fixtures", "-r", f"E={p}", "-q", "tc[src, dst](E)")
    assert code == 0 and out.endswith("(3 rows)\n")
    code, _, err = call("eval", "--no-fixtures", "-q", "A")
    assert code == 1 and "unbound" in err


def test_eval_errors_and_usage():
    code, _, err = call("eval", "-q", "A & ")
    assert code == 1 and "parse error" in err
    code, _, err = call("eval", "-q", "A & rename[x -> y](A)")
    assert code == 1 and "rename[x -> y](A)" in err
    code, _, err = call("eval", "-r", "bad", "-q", "A")
    assert code == 2 and "NAME=PATH" in err
    code, _, _ = call("frobnicate")
    assert code == 2
    code, _, err = call("check-laws", "--cases", "0")
    assert code == 2


def test_check_laws_deterministic():
    first = call("check-laws", "--cases", "1000", "--seed", "7")
    second = call("check-laws", "--cases", "1000", "--seed", "7")
    assert first[0] == 0
    assert first == second
    assert first[1].count("PASS") == 8


def test_counterexample_distributivity():
    code, out, _ = call("counterexample", "--kind", "distributivity")
    assert code == 0
    assert "FAIL join-over-union" in out
    left, right = out.split("  left side:\n")[1].split("  right side:\n")
    assert "(6 rows)" in left and "(5 rows)" in right


def test_counterexample_modularity_and_figure(tmp_path):
    fig = tmp_path / "closure.png"
    code, out, _ = call("counterexample", "--kind", "modularity", "--figure", str(fig))
    assert code == 0
    assert "closure: 19 elements" in out and "pentagon" in out
    assert fig.stat().st_size > 0


def test_counterexample_none(tmp_path):
    p = tmp_path / "R.csv"
    p.write_text("x\n1\n", encoding="utf-8")
    code, out, _ = call("counterexample", "--kind", "distributivity", "--from", str(p))
    assert code == 1 and "no distributivity counterexample" in out


def test_fca(tmp_path):
    dot = tmp_path / "c.dot"
    fig = tmp_path / "c.png"
    code, out, _ = call("fca", "--dot", str(dot), "--figure", str(fig), "--relations")
    assert code == 0
    assert "5 objects, 6 attributes, 14 incidences" in out
    assert "concepts: 13, covering edges: 21" in out
    assert "PASS fca-bridge (91 pairs)" in out
    assert dot.read_text().count(" -> ") == 21
    assert fig.stat().st_size > 0
    code, out, _ = call("fca", "--dot", "-")
    assert "digraph" in out


def test_fca_bad_context(tmp_path):
    p = tmp_path / "ctx.csv"
    p.write_text(",a\ng,y\n", encoding="utf-8")
    code, _, err = call("fca", "--context", str(p))
    assert code == 1 and "parse error" in err


def test_laws_on_file(tmp_path):
    p = tmp_path / "D.json"
    p.write_text('{"header": ["x"], "rows": [[1], [2]]}', encoding="utf-8")
    code, out, _ = call("laws-on-file", "-r", f"D={p}")
    assert code == 0
    assert "(64 cases)" in out and out.count("PASS") == 8


def test_repl(tmp_path):
    p = tmp_path / "r.csv"
    p.write_text("x\n5\n", encoding="utf-8")
    script = io.StringIO(f"A & B\n:load R {p}\n:list\nR | A\nnope\n:what\n:quit\nA\n")
    out = io.StringIO()
    assert repl(example_env(), script, out) == 0
    text = out.getvalue()
    assert "1 | 2 | 4" in text
    assert "loaded R" in text
    assert "R(x) [1 rows]" in text
    assert text.count("error:") == 2
    assert text.rstrip().endswith("error: commands are :load NAME PATH, :list, :quit")
