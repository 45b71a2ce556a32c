import json

import pytest

from sequent_ir.cli import main
from sequent_ir.core.parser import parse_core_program
from sequent_ir.core.syntax import alpha_eq_program
from sequent_ir.focusing import is_focused_program


def cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name, expected", [
    ("fac.fun", "1"), ("fac5.fun", "120"), ("mult.fun", "0"), ("mult_nonzero.fun", "42"),
    ("swap.fun", "Tup(3, 2)"), ("swap_lazy.fun", "1"), ("let.fun", "16"), ("lambda.fun", "4"),
    ("streams.fun", "13"), ("label.fun", "3"),
])
def test_run_and_compiled_run_agree(capsys, tmp_path, programs, name, expected):
    code, out, _ = cli(capsys, "run", programs / name)
    assert code == 0 and out.strip() == expected
    target = tmp_path / "out.core"
    assert cli(capsys, "compile", programs / name, "--focus", "--simplify", "-o", target)[0] == 0
    code, out, _ = cli(capsys, "run-core", target)
    assert code == 0 and out.strip() == expected


@pytest.mark.parametrize("name, strategy, expected", [
    ("arith.core", "cbv", "6"), ("fac.core", "cbv", "120"), ("sum.core", "cbv", "13"),
    ("critical_pair.core", "cbv", "1"), ("critical_pair.core", "cbn", "2"),
])
def test_run_core(capsys, programs, name, strategy, expected):
    code, out, _ = cli(capsys, "run-core", programs / name, "--strategy", strategy)
    assert code == 0 and out.strip() == expected


def test_check_commands(capsys, programs):
    code, out, _ = cli(capsys, "check", programs / "mult.fun")
    assert code == 0 and out.startswith("ok: 2 definition")
    code, out, _ = cli(capsys, "check-core", programs / "fac.core")
    assert code == 0 and out.startswith("ok: 1 definition")


def test_trace_output(capsys, programs):
    code, out, _ = cli(capsys, "run", programs / "label.fun", "--trace")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].split()[:2] == ["0", "label"]
    assert lines[1].split()[:2] == ["1", "goto"]
    assert lines[-1] == "3"


def test_json_output(capsys, programs):
    code, out, _ = cli(capsys, "run-core", programs / "arith.core", "--json")
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"steps", "result", "status"}
    assert data["result"] == "6" and data["status"] == "ok"
    assert [s["rule"] for s in data["steps"]] == ["mu", "binop"]
    assert data["steps"][0] == {"i": 0, "rule": "mu", "term": "*(2, 3; star)"}


def test_compile_mult(capsys, programs):
    code, out, _ = cli(capsys, "compile", programs / "mult.fun", "--focus", "--simplify")
    assert code == 0
    expected = parse_core_program("""
def mult(l; a) := mult'(l; a, a)
def mult'(l; a, b) :=
  < l | case { Nil => < 1 | b >, Cons(x, xs) => ifz(x, < 0 | a >, mult'(xs; a, mu~ z. *(x, z; b))) } >
""")
    got = parse_core_program(out)
    got = type(got)(got.definitions, None)
    assert alpha_eq_program(got, expected, types=False)


def test_focus_command(capsys, programs):
    code, out, _ = cli(capsys, "focus", programs / "sum.core")
    assert code == 0 and is_focused_program(parse_core_program(out))


def test_error_exit_codes(capsys, tmp_path):
    bad_parse = tmp_path / "a.fun"
    bad_parse.write_text("1 +")
    code, _, err = cli(capsys, "run", bad_parse)
    assert code == 2 and err.startswith("parse-error: line 1")

    bad_type = tmp_path / "b.fun"
    bad_type.write_text("1 + Nil")
    code, _, err = cli(capsys, "run", bad_type)
    assert code == 3 and err.startswith("type-error: mismatch:")

    loop = tmp_path / "c.fun"
    loop.write_text("def loop(x: Int;) : Int := loop(x;)\n\nloop(1;)")
    code, _, err = cli(capsys, "run", loop, "--fuel", 20)
    assert code == 4 and err.startswith("runtime-error: fuel:") and "after 20 steps" in err

    stuck = tmp_path / "d.core"
    stuck.write_text("+(mu b. < 1 | b >, 2; star)")
    code, _, err = cli(capsys, "run-core", stuck)
    assert code == 4 and err.startswith("runtime-error: stuck:")


def test_usage_errors(capsys, tmp_path):
    assert cli(capsys)[0] == 1
    assert cli(capsys, "frobnicate")[0] == 1
    assert cli(capsys, "run", tmp_path / "missing.fun")[0] == 1
    code, _, err = cli(capsys, "run-core", tmp_path / "x.core", "--strategy", "cbx")
    assert code == 1
    f = tmp_path / "defs.fun"
    f.write_text("def f(;) : Int := 1")
    code, _, err = cli(capsys, "run", f)
    assert code == 1 and err.startswith("usage-error:")


def test_module_entry_point(programs):
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "sequent_ir", "run", str(programs / "fac5.fun")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "120"
