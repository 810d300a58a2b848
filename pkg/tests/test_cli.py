import json

import numpy as np
import pytest

from oham.cli import main

P3_CONFIG = """\
oham-problem v1

[coefficients]
p_exponent = 2
q_exponent = 2

[bc]
family = neumann-robin
alpha = 1
beta = 1
gamma = 0

[nonlinearity]
f = exp(-y)
form = minus-div
"""


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(out):
    lines = out.strip().splitlines()
    assert lines[0] == "# oham-report v1"
    assert lines[1] == "kind,key,x,value"
    rows = {}
    for line in lines[2:]:
        kind, key, x, value = line.split(",")
        rows.setdefault(key, []).append((x, value))
    return rows


def test_solve_benchmark_csv(capsys):
    code, out, err = run_cli(capsys, "solve", "--problem", "P1",
                             "--alpha", "0.5", "--beta", "1",
                             "--order", "6", "--c0", "auto")
    assert code == 0
    rows = parse_csv(out)
    c0 = float(rows["c0"][0][1])
    assert -1.2 < c0 < -0.8
    assert len(rows["phi"]) == 9
    abs_err = np.array([float(v) for _, v in rows["abs_error"]])
    assert abs_err.max() < 1e-8


def test_solve_fixed_c0_exit_zero(capsys, tmp_path):
    cfg = tmp_path / "my.problem"
    cfg.write_text(P3_CONFIG)
    code, out, err = run_cli(capsys, "solve", "--file", str(cfg),
                             "--c0", "fixed:-1", "--order", "5")
    assert code == 0
    rows = parse_csv(out)
    assert float(rows["c0"][0][1]) == -1.0


def test_solve_p3_solution_value(capsys):
    code, out, err = run_cli(capsys, "solve", "--problem", "P3",
                             "--a2", "1", "--b2", "1", "--g2", "0",
                             "--order", "10")
    assert code == 0
    rows = parse_csv(out)
    phi01 = float(rows["phi"][0][1])
    assert phi01 == pytest.approx(0.3663613, abs=1e-4)


def test_validation_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.problem"
    bad.write_text(P3_CONFIG.replace("q_exponent = 2", "q_exponent = -1"))
    code, out, err = run_cli(capsys, "solve", "--file", str(bad))
    assert code == 2
    assert out == ""
    assert "error" in err


def test_divergence_exit_code(capsys):
    code, out, err = run_cli(capsys, "solve", "--problem", "P3",
                             "--order", "5", "--bracket", "-60", "-30")
    assert code == 3
    assert out == ""


def test_markdown_and_jsonl_formats(capsys):
    code, out, _ = run_cli(capsys, "solve", "--problem", "P3", "--order", "3",
                           "--format", "markdown")
    assert code == 0
    assert out.startswith("# oham-report v1")
    assert "| scalar | c0 |" in out

    code, out, _ = run_cli(capsys, "solve", "--problem", "P3", "--order", "3",
                           "--format", "jsonl")
    assert code == 0
    first = json.loads(out.splitlines()[0])
    assert first["schema"] == "oham-report v1"


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.csv"
    code, out, _ = run_cli(capsys, "solve", "--problem", "P3", "--order", "3",
                           "--output", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("# oham-report v1")


def test_custom_reporting_points(capsys):
    code, out, _ = run_cli(capsys, "solve", "--problem", "P3", "--order", "3",
                           "--xs", "0.25,0.75")
    rows = parse_csv(out)
    assert [x for x, _ in rows["phi"]] == [f"{0.25:.16e}", f"{0.75:.16e}"]


class TestSweep:
    def test_two_point_contract(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--problem", "P3",
                               "--lo", "-1.2", "--hi", "-0.4", "--count", "2",
                               "--order", "3")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[1] == "c0,E,minimizer"
        assert len(lines) == 4
        c0s = [float(l.split(",")[0]) for l in lines[2:]]
        assert c0s == sorted(c0s)
        assert sum(int(l.split(",")[2]) for l in lines[2:]) == 1

    def test_zero_nonlinearity_sweep(self, capsys, tmp_path):
        cfg = tmp_path / "hom.problem"
        cfg.write_text(P3_CONFIG.replace("f = exp(-y)", "f = 0*y"))
        code, out, _ = run_cli(capsys, "sweep", "--file", str(cfg),
                               "--lo", "-1.5", "--hi", "-0.5", "--count", "5",
                               "--order", "3")
        assert code == 0
        for line in out.strip().splitlines()[2:]:
            assert float(line.split(",")[1]) < 1e-28

    def test_minimizer_location(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--problem", "P3",
                               "--lo", "-1.5", "--hi", "-0.1", "--count", "29",
                               "--order", "5")
        assert code == 0
        lines = out.strip().splitlines()[2:]
        marked = [float(l.split(",")[0]) for l in lines if l.split(",")[2] == "1"]
        assert marked[0] == pytest.approx(-0.6842, abs=0.1)


def test_table_command_runs(capsys):
    code, out, err = run_cli(capsys, "table", "7")
    assert code == 0
    assert "PASS" in out
    assert "FAIL" not in out


def test_table_unknown_id(capsys):
    code, out, err = run_cli(capsys, "table", "12")
    assert code == 2


def test_determinism_across_thread_counts(capsys, monkeypatch):
    outputs = []
    for threads in ("1", "8"):
        monkeypatch.setenv("OHAM_THREADS", threads)
        code, out, _ = run_cli(capsys, "solve", "--problem", "P3",
                               "--order", "5")
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]
