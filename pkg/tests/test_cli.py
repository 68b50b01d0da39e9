import json
import subprocess
import sys

import pytest

from wittcomp.cli import ConfigError, build_config, main, parse_poly, read_config_file
from wittcomp.composite import _fixture_path


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "wittcomp", *args],
                          capture_output=True, text=True)


@pytest.mark.parametrize("args,expected", [
    (["--h", "1/2", "qr(0)", "z^3"], "7/2*z^3"),
    (["current(2)", "z"], "0"),
    (["--h", "1", "qr(1)", "z^2"], "z^3"),
    (["--h", "1", "sl2.Lm1", "1 - 1/2*z"], "-1/2*z^2 + z"),
])
def test_apply(args, expected, capsys):
    assert main(["apply", *args]) == 0
    assert capsys.readouterr().out.strip() == expected


def test_apply_errors(capsys):
    assert main(["apply", "qr(x)", "z"]) == 2
    assert main(["apply", "--h", "0", "qr(1)", "z"]) == 2
    assert main(["apply", "qr(1)", "z^"]) == 2


def test_dump(capsys):
    assert main(["dump", "--h", "1", "qr(2)"]) == 0
    assert capsys.readouterr().out.strip() == "shift 2: (1)/(nu + 2)"


def test_parse_poly():
    assert parse_poly("3/2*z^3 - z + 1").render() == "3/2*z^3 - z + 1"
    assert parse_poly("z + z").render() == "2*z"
    with pytest.raises(ConfigError):
        parse_poly("z^^2")


def test_run_sl2(tmp_path):
    out = tmp_path / "r.json"
    assert main(["run", "--suites", "sl2", "--h", "1/2", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["suites"][0]["status"] == "pass"
    assert (tmp_path / "r.json.log").exists()


def test_run_thm1a_has_nonzero_table(tmp_path):
    out = tmp_path / "r.json"
    assert main(["run", "--suites", "thm1a", "--h", "1", "--K", "4", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())["suites"][0]["payload"][0]
    assert payload["passed"]
    assert any(e["status"] == "nonzero" and not e["in_piece"] for e in payload["entries"])


@pytest.mark.parametrize("args", [
    ["--K", "1"], ["--N", "3"], ["--h", "0"], ["--h", "0.5"], ["--suites", "nope"],
    ["--format", "xml"], ["--format", "csv", "--suites", "sl2"], ["--K", "two"],
])
def test_usage_errors(args):
    assert main(["run", "--suites", "sl2", *args] if "--suites" not in args else ["run", *args]) == 2


def test_argparse_error_exit_status():
    assert run_cli("run", "--bogus").returncode == 2
    assert run_cli().returncode == 2


def test_config_file_and_overrides(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# sample\nh = 1, 3/2\nK=3\nsuites=sl2,thm1a\n")
    values = read_config_file(str(cfg))
    c = build_config(values, {"K": "5", "h": None})
    assert c.h == ["1", "3/2"] and c.K == 5 and c.suites == ["sl2", "thm1a"]
    (tmp_path / "bad.cfg").write_text("K\n")
    with pytest.raises(ConfigError):
        read_config_file(str(tmp_path / "bad.cfg"))
    with pytest.raises(ConfigError):
        build_config({"colour": "red"}, {})
    assert main(["run", "--config", str(cfg), "--out", str(tmp_path / "o.json")]) == 0


def test_corrupted_fixture_fails_run(tmp_path):
    data = json.loads(_fixture_path().read_text())
    data["matrices"]["A"][0][1] = "7"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert main(["run", "--suites", "octahedron", "--fixture", str(bad),
                 "--out", str(tmp_path / "o.json")]) == 1
    res = run_cli("run", "--suites", "octahedron", "--fixture", str(bad))
    assert res.returncode == 1 and "octahedron: fail" in res.stderr


def test_unwritable_output():
    assert main(["run", "--suites", "sl2", "--out", "/nonexistent/dir/r.json"]) == 2


def test_csv_output(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["run", "--suites", "thm1a", "--h", "1", "--K", "4", "--format", "csv",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "i,j,status"
    assert [tuple(map(int, l.split(",")[:2])) for l in lines[1:]] == sorted(
        tuple(map(int, l.split(",")[:2])) for l in lines[1:])
    out2 = tmp_path / "d2.csv"
    assert main(["run", "--suites", "thm1a", "--h", "1,2", "--K", "3", "--format", "csv",
                 "--out", str(out2)]) == 0
    assert out2.read_text().splitlines()[0] == "h,i,j,status"
