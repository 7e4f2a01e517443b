import json
import subprocess
import sys

import pytest

from qsets import cli
from qsets.universe_file import read_universe

UNIVERSE = {
    "dimension": 2,
    "projections": {"P": {"span": [["1", "0"]]}, "Q": {"span": [["1", "1"]]}},
    "qsets": {"u": [["check:0", "P"]], "v": [["check:0", "Q"]]},
    "formulas": {
        "exists_side": "E x in u . !!(x in v)",
        "not_forall_side": "!(A x in u . !(x in v))",
        "unbounded": "E x . x in u",
    },
}


@pytest.fixture
def universe(tmp_path):
    path = tmp_path / "cx.json"
    path.write_text(json.dumps(UNIVERSE))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_builtin_checks(capsys):
    assert run(capsys, "eval", "--formula", "check:0 in check:1") == (0, "one\n", "")


def test_eval_counterexample_takeuti(capsys, universe):
    code, out, _ = run(capsys, "eval", "--universe", universe, "--formula", "@exists_side",
                       "--semantics", "takeuti")
    assert (code, out.strip()) == (0, "zero")
    code, out, _ = run(capsys, "eval", "--universe", universe, "--formula", "@not_forall_side",
                       "--semantics", "takeuti", "--show-span")
    assert code == 0 and out.strip() == "proper span{(1, 0)} = P"


def test_eval_counterexample_reformed(capsys, universe):
    for name in ("@exists_side", "@not_forall_side"):
        code, out, _ = run(capsys, "eval", "--universe", universe, "--formula", name, "--show-span")
        assert code == 0 and out.strip() == "proper span{(1, 0)} = P"


@pytest.mark.parametrize("formula,code", [
    ("u in", 2), ("w in u", 2), ("@missing", 2), ("@unbounded", 3), ("A x . x in u", 3),
])
def test_eval_errors(capsys, universe, formula, code):
    got, _, err = run(capsys, "eval", "--universe", universe, "--formula", formula)
    assert got == code and err.startswith("error:")


def test_eval_invalid_universe(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({**UNIVERSE, "dimension": 12}))
    assert run(capsys, "eval", "--universe", str(bad), "--formula", "u in u")[0] == 4
    assert run(capsys, "eval", "--universe", str(tmp_path / "none.json"), "--formula", "u in u")[0] == 4


def test_demo(capsys):
    code, out, _ = run(capsys, "demo", "counterexample")
    assert code == 0
    lines = out.splitlines()
    takeuti = lines[lines.index("takeuti:") + 1:lines.index("takeuti:") + 3]
    reformed = lines[lines.index("reformed:") + 1:lines.index("reformed:") + 3]
    assert takeuti[0].endswith("= zero span{}")
    assert takeuti[1].endswith("= proper span{(1, 0)} = P")
    assert all(line.endswith("= proper span{(1, 0)} = P") for line in reformed)


def test_check_summary(capsys):
    code, out, _ = run(capsys, "check", "demorgan", "--seed", "7", "--cases", "20",
                       "--format", "summary")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["cases"] == 20 and data["seed"] == 7
    assert data["replay"].startswith("qsets check demorgan --seed 7 --cases 20")


@pytest.mark.parametrize("argv", [
    ["check", "eqv", "--cases", "10", "--rank", "2", "--dim", "2"],
    ["check", "kernel", "--cases", "5", "--dim", "3"],
    ["check", "transfer", "--cases", "2", "--conditional", "contrapositive"],
    ["check", "restriction", "--cases", "5", "--dim", "2-3", "--rank", "1"],
])
def test_check_variants(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and "PASS" in out


def test_check_rejects_unknown_suite_and_bad_dim(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["check", "nonsense"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["check", "kernel", "--dim", "9"])
    capsys.readouterr()


def test_commutator(capsys, universe):
    assert run(capsys, "commutator", "--universe", universe, "--sets", "u,v")[:2] == (0, "zero span{}\n")
    assert run(capsys, "commutator", "--universe", universe, "--sets", "u")[1].startswith("one")
    assert run(capsys, "commutator", "--universe", universe, "--sets", "u,nope")[0] == 2


def test_embed(capsys):
    assert run(capsys, "embed", "2")[1] == "{<{}, 1>, <{<{}, 1>}, 1>}\n"
    code, out, _ = run(capsys, "embed", "1", "--format", "json")
    assert json.loads(out)["qsets"]["check1"] == [["check:0", "full"]]
    assert run(capsys, "embed", "-1")[0] == 2


def test_restrict_then_eval(capsys, universe, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "restrict", "--universe", universe, "--set", "u", "--proj", "full",
                       "--as", "u1", "--output", str(out_path))
    assert code == 0 and "u1" in out
    assert read_universe(out_path).formulas == UNIVERSE["formulas"]
    assert run(capsys, "eval", "--universe", str(out_path), "--formula", "u1 = u")[1] == "one\n"


def test_restrict_print_and_errors(capsys, universe):
    code, out, _ = run(capsys, "restrict", "--universe", universe, "--set", "v", "--proj", "P")
    # v|P = {<0|P, Q & P>, <v, 0>} with Q & P = 0 and 0|P = {<0, 0>}
    assert code == 0 and out == "{<{<{}, Q>}, 0>, <{<{}, 0>}, 0>}\n"
    assert run(capsys, "restrict", "--universe", universe, "--set", "v", "--proj", "R")[0] == 2
    assert run(capsys, "restrict", "--universe", universe, "--set", "z", "--proj", "P")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qsets", "eval", "--formula", "check:1 = check:2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "zero\n"
