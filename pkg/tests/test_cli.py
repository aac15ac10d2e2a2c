import json
import subprocess
import sys
import time

import pytest

from aes import aes_table
from imbalance.cli import main
from imbalance.tableio import format_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cube_file(tmp_path, cube8):
    path = tmp_path / "cube.txt"
    path.write_text(format_table(cube8))
    return path


def test_analyze(capsys, cube_file):
    code, out, err = run(capsys, "analyze", str(cube_file), "--oracle-check")
    assert code == 0
    js = json.loads(out)
    assert js["nb"]["num"] == 56 and js["ambiguity"] == 28 and js["deficiency"] == 28
    assert "NB_F = 56/1" in err


def test_analyze_parity(capsys, tmp_path):
    path = tmp_path / "parity.txt"
    path.write_text("G1 4\nG2 2\nmap 0 1 0 1\n")
    code, out, _ = run(capsys, "analyze", str(path))
    assert code == 0 and json.loads(out)["ambiguity"] == 18


def test_analyze_aes(capsys, tmp_path):
    path = tmp_path / "aes.txt"
    path.write_text(format_table(aes_table()))
    code, out, _ = run(capsys, "analyze", str(path))
    js = json.loads(out)
    assert code == 0
    assert js["nb"]["num"] == 67320 and js["uniformity"] == 4 and js["nonlinearity_classical"] == 112


def test_bounds_command(capsys, cube_file):
    code, out, err = run(capsys, "bounds", str(cube_file))
    assert code == 0
    ids = [r["id"] for r in json.loads(out)["bounds"]]
    assert "B5" in ids and "tight" in err


def test_verify_command(capsys, tmp_path, inv16):
    path = tmp_path / "inv.txt"
    path.write_text(format_table(inv16))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and json.loads(out)["ok"]


def test_corrupted_table_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("G1 4\nG2 2\nmap 0 1 0 5\n")
    for cmd in ("analyze", "verify", "bounds"):
        code, out, err = run(capsys, cmd, str(path))
        assert code == 2 and out == "" and "out of range" in err


def test_parse_error_reports_line(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("G1 4\nG2 2\nmap 0 1 zero 1\n")
    code, _, err = run(capsys, "analyze", str(path))
    assert code == 2 and "line 3" in err


def test_gen_power_and_inverse(capsys):
    code, out, _ = run(capsys, "gen", "--field", "2^3", "--power", "3")
    assert code == 0
    values = [int(v) for v in out.split("map ", 1)[1].splitlines()[0].split()]
    assert sorted(values) == list(range(8))
    code, out, _ = run(capsys, "gen", "--field", "2^4", "--inverse")
    assert "map 0 " in out


def test_gen_random_is_reproducible(capsys):
    _, a, _ = run(capsys, "gen", "--group", "5", "--random", "42", "--bijection")
    _, b, _ = run(capsys, "gen", "--group", "5", "--random", "42", "--bijection")
    assert a == b
    values = [int(v) for v in a.split("map ", 1)[1].splitlines()[0].split()]
    assert sorted(values) == list(range(5))


def test_gen_usage_errors(capsys):
    assert run(capsys, "gen", "--field", "2^3")[0] == 2
    assert run(capsys, "gen", "--field", "2^3", "--power", "3", "--inverse")[0] == 2
    assert run(capsys, "gen", "--group", "5")[0] == 2
    assert run(capsys, "gen", "--group", "5", "--random", "1", "--power", "3")[0] == 2
    assert run(capsys, "gen", "--field", "2^3", "--poly", "1,0,0,1", "--power", "3")[0] == 2


def test_gen_to_file_then_analyze(capsys, tmp_path):
    path = tmp_path / "gold.json"
    assert run(capsys, "gen", "--field", "2^4", "--gold", "2", "-o", str(path), "--json")[0] == 0
    code, out, _ = run(capsys, "analyze", str(path))
    assert code == 0 and json.loads(out)["nb"]["num"] == 720


def test_search_commands(capsys):
    code, out, _ = run(capsys, "search", "--group", "5", "--bijections", "--exhaustive")
    assert code == 0 and json.loads(out)["min_ambiguity"] == 8
    code, out, _ = run(capsys, "search", "--group", "7", "--bijections", "--sample", "300", "--seed", "1")
    assert code == 0 and json.loads(out)["min_ambiguity"] >= 12
    code, out, _ = run(capsys, "search", "--group", "4", "--bijections", "--exhaustive", "--csv")
    assert out.splitlines()[0].startswith("G1,G2,mode")


def test_search_capacity_exit_code(capsys):
    code, _, err = run(capsys, "search", "--group", "2 2 2 2", "--exhaustive")
    assert code == 3 and "--sample" in err


def test_search_usage(capsys):
    assert run(capsys, "search", "--group", "5")[0] == 2
    assert run(capsys, "search", "--group", "5", "--g1", "5", "--exhaustive")[0] == 2


def test_affine_shifts_flag(capsys, tmp_path):
    table = tmp_path / "f.txt"
    table.write_text("G1 4\nG2 2\nmap 0 0 0 1\n")
    shifts = tmp_path / "s.txt"
    shifts.write_text("G1 4\nG2 2\nmap 0 1 0 1\n---\nG1 4\nG2 2\nmap 1 1 1 1\n")
    code, out, _ = run(capsys, "bounds", str(table), "--affine-shifts", str(shifts))
    ids = [r["id"] for r in json.loads(out)["bounds"]]
    assert code == 0 and {"B3.0", "B3.1", "B3.2"} <= set(ids)


def test_stdin_and_module_entry(cube8):
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "imbalance", "analyze", "-"],
        input=format_table(cube8), capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["nb"]["num"] == 56
    assert time.perf_counter() - start < 30
