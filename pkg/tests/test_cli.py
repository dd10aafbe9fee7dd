import json
import subprocess
import sys

import pytest

from symcorr import cli
from symcorr.exact import USeries

Q1 = '{"q":["1"]}'


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def last_line(out):
    return out.strip().splitlines()[-1]


def test_correlate_anchor(capsys):
    code, out, _ = run(capsys, "correlate", "--class", "U", "--params", Q1, "--params2", Q1,
                       "--set", "0", "--order", "8")
    assert code == 0
    assert last_line(out) == "u^2"
    assert out.startswith("# command=correlate order=8 seed=0")


def test_correlate_empty_params(capsys):
    code, out, _ = run(capsys, "correlate", "--class", "U", "--set", "0", "--order", "8")
    assert code == 0 and last_line(out) == "0"


def test_correlate_split_class_with_oracle(capsys):
    code, out, _ = run(capsys, "correlate", "--class", "O", "--params", '{"q":["1","1/2"]}',
                       "--alpha", "1/2", "--set0", "0", "--set1", "1", "--order", "8",
                       "--oracle", "--strict")
    assert code == 0
    lines = dict(line.split(None, 1) for line in out.splitlines()[1:])
    assert lines["kernel"] == lines["oracle"]
    assert lines["defect"] == "0"


def test_gap_example(capsys):
    code, out, _ = run(capsys, "gap", "--class", "U", "--params", Q1, "--l", "0", "--order", "8")
    assert code == 0 and last_line(out) == "1 - u^2"


@pytest.mark.parametrize("tag", ["O-mixed", "S-mixed", "frob-minus", "frob-half", "rot", "UU"])
def test_gap_against_oracle(capsys, tag):
    code, out, _ = run(capsys, "gap", "--class", tag, "--params", '{"q":["1","1/2"]}',
                       "--alpha", "1/2", "--l", "1", "--order", "6", "--oracle", "--strict")
    assert code == 0, out


def test_fredholm_against_oracle(capsys):
    code, out, _ = run(capsys, "fredholm", "--class", "S-mixed", "--params", Q1, "--beta", "1/3",
                       "--l", "-1", "--n", "2", "--s", "1/2", "--oracle", "--strict")
    assert code == 0
    assert "defect  0" in out


def test_identities_example(capsys):
    code, out, _ = run(capsys, "identities", "--family", "pfaffian-properties", "--order", "6",
                       "--seed", "7")
    assert code == 0
    assert "9/9 passed" in last_line(out)


def test_verify_example(capsys):
    code, out, _ = run(capsys, "verify", "--class", "S", "--params", Q1, "--beta", "1/3",
                       "--order", "8", "--sets-up-to", "2")
    assert code == 0
    assert "FAIL" not in out
    assert "106/106 passed" in out


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "--class", "U", "--params", Q1, "--l", "0")
    assert code == 0 and "row_cdf  1 - u^2" in out


def test_superset_flags(capsys):
    code, out, _ = run(capsys, "correlate", "--class", "UU", "--params", Q1, "--set-plus", "0",
                       "--set-minus", "1", "--oracle", "--strict")
    assert code == 0


def test_half_integer_points(capsys):
    code, out, _ = run(capsys, "correlate", "--class", "frob-half", "--params", Q1,
                       "--set", "1/2,-3/2", "--oracle", "--strict")
    assert code == 0
    code, _, err = run(capsys, "correlate", "--class", "frob-half", "--set", "1")
    assert code == 2 and "half-integers" in err


@pytest.mark.parametrize("argv", [
    ["correlate", "--class", "U", "--alpha", "0.5"],
    ["correlate", "--class", "U", "--set", "1/2"],
    ["correlate", "--class", "U", "--params", "{bad"],
    ["correlate", "--class", "U", "--params", '{"x":[1]}'],
    ["correlate", "--class", "O", "--set", "0"],
    ["correlate", "--class", "u", "--beta", "1"],
    ["correlate", "--class", "U", "--set", "0,0"],
    ["gap", "--class", "O", "--l", "0"],
    ["gap", "--class", "U"],
    ["correlate"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_parse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["nonsense"])
    assert exc.value.code == 2


def test_computation_error_exit_3(capsys, monkeypatch):
    def boom(*a, **k):
        raise ArithmeticError("singular")
    monkeypatch.setattr(cli.checks, "kernel_value", boom)
    code, _, err = run(capsys, "correlate", "--class", "U", "--set", "0")
    assert code == 3 and "singular" in err


def test_verification_failure_exit_4(capsys, monkeypatch):
    monkeypatch.setattr(cli.checks, "oracle_value", lambda *a, **k: USeries.one(8))
    code, out, _ = run(capsys, "correlate", "--class", "U", "--params", Q1, "--set", "0",
                       "--oracle", "--strict")
    assert code == 4
    code, out, _ = run(capsys, "correlate", "--class", "U", "--params", Q1, "--set", "0",
                       "--oracle")
    assert code == 0


def test_json_roundtrip(capsys):
    code, out, _ = run(capsys, "correlate", "--class", "rot", "--params", Q1, "--set", "1/2,5/2",
                       "--format", "json", "--oracle")
    assert code == 0
    d = json.loads(out)
    assert d["header"]["order"] == 8 and d["header"]["seed"] == 0
    for key in ("kernel", "oracle", "defect"):
        x = USeries.from_json(d[key]["coefficients"])
        assert str(x) == d[key]["series"]
        assert x.to_json() == d[key]["coefficients"]


def test_params_from_file(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text(Q1)
    code, out, _ = run(capsys, "correlate", "--class", "U", "--params", str(f), "--set", "0")
    assert code == 0 and last_line(out) == "u^2"


def test_deterministic_output():
    argv = [sys.executable, "-m", "symcorr", "identities", "--family", "pfaffian-properties",
            "--order", "4", "--seed", "3", "--format", "json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
