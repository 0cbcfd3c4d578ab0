import json
import subprocess
import sys

import pytest

from azumaya_chow.cli import main, pairing_sweep_source, selftest_source
from azumaya_chow.script import parse_and_resolve


def test_selftest_exits_zero(capsys):
    assert main(["selftest", "--seeds", "20"]) == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out


def test_selftest_covers_every_check():
    checks = {s.name for s in _checks(parse_and_resolve(selftest_source()).statements)}
    assert checks == {"pairing", "isometry", "ch_inverse_sqrt", "a_c1", "azumaya_ch", "splitting", "ring"}


def _checks(stmts):
    for s in stmts:
        if hasattr(s, "body"):
            yield from _checks(s.body)
        elif type(s).__name__ == "Check":
            yield s


def test_sweep_pairing_entry_count(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["sweep-pairing", "--n-max", "8", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["entries"]) == 8 * 4
    assert all(e["verdict"] == "pass" for e in data["entries"])
    assert "32/32 passed" in capsys.readouterr().out


def test_sweep_pairing_genus_list(capsys):
    assert main(["sweep-pairing", "--n-max", "3", "--genus-list", "0,5"]) == 0
    assert "6/6 passed" in capsys.readouterr().out


def test_sweep_source_parses():
    parse_and_resolve(pairing_sweep_source(2, [0]))


def test_run_syntax_error_exits_two(tmp_path, capsys):
    script = tmp_path / "bad.akv"
    script.write_text("azumaya A rank 4\ncheck pairing(A A)\n")
    assert main(["run", str(script)]) == 2
    err = capsys.readouterr().err
    assert f"{script}:2:17:" in err
    assert "expected one of" in err


def test_run_use_before_declare_exits_two(tmp_path, capsys):
    script = tmp_path / "bad.akv"
    script.write_text("eval ch(A)\n")
    assert main(["run", str(script)]) == 2
    assert "used before declaration" in capsys.readouterr().err


def test_run_failure_exits_one(tmp_path):
    script = tmp_path / "fail.akv"
    script.write_text("eval 1/0\n")
    assert main(["run", str(script)]) == 1


def test_run_writes_json(tmp_path, capsys):
    script = tmp_path / "ok.akv"
    script.write_text("azumaya A rank 4\nprint ch(A)\neval ch(A)\n")
    out = tmp_path / "out.json"
    assert main(["run", str(script), "--json", str(out), "--seed", "3"]) == 0
    data = json.loads(out.read_text())
    assert data["seed"] == 3 and data["ok"]
    assert "ch(A) = 4 - c2(A)" in capsys.readouterr().out


def test_missing_file_exits_two(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nope.akv")]) == 2
    assert "cannot read" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["sweep-pairing", "--genus-list", "a,b"]])
def test_usage_errors_exit_two(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "azumaya_chow", "sweep-pairing", "--n-max", "2", "--genus-list", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "2/2 passed" in proc.stdout
