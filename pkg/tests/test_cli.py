import json
import subprocess
import sys

import pytest

from dlcurves import cli


def run(argv, tmp_path, name="out"):
    out = tmp_path / name
    code = cli.main(argv + ["--out", str(out)])
    return code, out.read_text() if out.exists() else None


def measured(text, check):
    for c in json.loads(text)["checks"]:
        if c["check_name"] == check:
            return c["measured"], c["status"]
    raise KeyError(check)


def test_count_su3(tmp_path):
    code, text = run(["count", "--family", "su3", "--m", "1", "--n", "4"], tmp_path)
    assert code == cli.EXIT_OK
    assert measured(text, "count_n4_exact_degree_4") == (216, "pass")
    assert measured(text, "count_n4_exact_degree_2") == (0, "pass")


def test_count_ree(tmp_path):
    code, text = run(["count", "--family", "ree", "--m", "0", "--n", "1"], tmp_path)
    assert code == cli.EXIT_OK
    assert measured(text, "count_n1_exact_degree_1") == (28, "pass")


def test_count_budget_refusal(tmp_path):
    code, text = run(["count", "--family", "sz", "--m", "1", "--n", "4"], tmp_path)
    assert code == cli.EXIT_BUDGET
    assert measured(text, "count_n4")[1] == "refused"


@pytest.mark.parametrize("argv", [
    ["count", "--family", "foo", "--m", "1"],
    ["count", "--family", "sz", "--m", "1", "--p", "3"],
    ["count", "--family", "su3", "--m", "0"],
    ["count", "--family", "su3", "--m", "1", "--strategy", "vscan"],
    ["count", "--family", "sz", "--m", "-1"],
    ["verify"],
])
def test_config_errors(argv, capsys):
    with pytest.raises(SystemExit) as e:
        code = cli.main(argv)
        raise SystemExit(code)
    assert e.value.code == cli.EXIT_CONFIG


def test_verify_deterministic(tmp_path):
    argv = ["verify", "--family", "su3", "--m", "1", "--seed", "7"]
    a = run(argv, tmp_path, "a")
    b = run(argv, tmp_path, "b")
    assert a[0] == cli.EXIT_OK
    assert a[1] == b[1]
    c = run(argv + ["--threads", "1"], tmp_path, "c")
    assert c[1] == a[1]


def test_verify_csv(tmp_path):
    code, text = run(["verify", "--family", "sz", "--m", "1", "--format", "csv"], tmp_path)
    assert code == cli.EXIT_OK
    assert text.splitlines()[0].startswith("family,p,m,q,check_name,status")


def test_dump_and_check_points(tmp_path):
    code, text = run(["dump-points", "--family", "su3", "--m", "1"], tmp_path, "p.csv")
    assert code == cli.EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "e1^e2,e2^e0,e0^e1"
    assert len(lines) == 1 + 9
    code, rep = run(["check-points", "--family", "su3", "--m", "1", "--points",
                     str(tmp_path / "p.csv")], tmp_path)
    assert code == cli.EXIT_OK
    assert measured(rep, "rows_on_curve") == (9, "pass")
    # round trip gives the identical set
    M = cli.suites.build_model("su3", 1)
    pts = cli.read_points(M, text)
    assert cli.write_points(M, pts) == text


def test_check_points_detects_bad_row(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("e1^e2,e2^e0,e0^e1\n0,1,1\n1,1,1\n")
    code, rep = run(["check-points", "--family", "su3", "--m", "1", "--points", str(bad)], tmp_path)
    assert code == cli.EXIT_FAIL
    assert measured(rep, "rows_on_curve") == (1, "fail")
    wrong = tmp_path / "wrong.csv"
    wrong.write_text("a,b,c\n0,1,1\n")
    assert cli.main(["check-points", "--family", "su3", "--m", "1", "--points", str(wrong)]) == \
        cli.EXIT_CONFIG


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "dlcurves.cli", "count", "--family", "sz", "--m", "0",
                        "--n", "1"], capture_output=True, text=True)
    assert r.returncode == 0
    assert measured(r.stdout, "count_n1_exact_degree_1") == (5, "pass")
