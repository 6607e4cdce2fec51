import json
import subprocess
import sys
from importlib.resources import files

import pytest
from jsonschema import Draft202012Validator

from localfactors.cli import main


def schema(name):
    return json.loads(files("localfactors").joinpath(f"schemas/{name}.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def validate(doc, name):
    Draft202012Validator(schema(name)).validate(doc)


@pytest.mark.parametrize("name", ["factors", "gauss", "pseries", "hecke"])
def test_schemas_are_valid(name):
    Draft202012Validator.check_schema(schema(name))


FACTOR_ARGS = [
    ["--n", "2", "--q", "3", "--d", "1", "--e", "1", "--m", "0"],
    ["--n", "4", "--q", "5", "--d", "2", "--e", "2", "--m", "3", "--sign1", "-1", "--sign2", "-1"],
    ["--n", "2", "--q", "3", "--d", "1", "--e", "1", "--m", "1", "--unequal"],
    ["--n", "2", "--q", "3", "--d", "1", "--e", "1", "--m", "0", "--unequal", "--l1", "1", "--l2", "2"],
    ["--n", "1", "--q", "7", "--d", "1", "--e", "1", "--m", "0", "--unequal", "--l1", "1", "--l2", "3"],
]


@pytest.mark.parametrize("args", FACTOR_ARGS)
def test_factors_json_validates(capsys, args):
    code, out, _ = run(capsys, "factors", *args)
    assert code == 0
    validate(json.loads(out), "factors")


def test_factors_conductor_from_toml(tmp_path, capsys):
    cfg = tmp_path / "pair.toml"
    cfg.write_text("n = 2\nq = 3\nd = 1\ne = 1\nm = 0\nequal_case = true\n")
    code, out, _ = run(capsys, "factors", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["conductor"] == -2


def test_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "pair.json"
    cfg.write_text(json.dumps({"n": 2, "q": 3, "d": 1, "e": 1, "m": 0}))
    code, out, _ = run(capsys, "factors", "--config", str(cfg), "--m", "2")
    assert json.loads(out)["conductor"] == -6


def test_unavailable_factors_are_null(capsys):
    code, out, _ = run(capsys, *(["factors"] + FACTOR_ARGS[2]))
    doc = json.loads(out)
    assert code == 0 and doc["gamma"] is None and doc["notes"]


@pytest.mark.parametrize(
    "argv",
    [
        ["factors", "--n", "2", "--q", "3", "--d", "1", "--e", "2", "--m", "0"],
        ["factors", "--n", "2", "--q", "6", "--d", "1", "--e", "1", "--m", "0"],
        ["factors", "--config", "/nonexistent.toml"],
        ["finite", "gauss", "--q", "11", "--l1", "1", "--l2", "2"],
        ["finite", "bessel", "--q", "3"],
        ["pseries", "--qa", "3", "--z1", "2", "--z2", "2"],
        ["verify", "--only", "nonsense"],
        ["hecke", "mul", "s2"],
    ],
)
def test_bad_input_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_pretty_l_factor(capsys):
    code, out, _ = run(capsys, "factors", *FACTOR_ARGS[0], "--format", "pretty")
    assert "L(s) = 1/(1 - 9^(-s))" in out


def test_finite_bessel_csv(capsys):
    code, out, _ = run(capsys, "finite", "bessel", "--q", "2", "--label", "1")
    rows = out.strip().splitlines()
    assert code == 0 and len(rows) == 7  # header + |GL2(F_2)|
    ident = [r for r in rows[1:] if r.split(",")[1:5] == ["1", "0", "0", "1"]]
    assert float(ident[0].split(",")[5]) == pytest.approx(1, abs=1e-12)


def test_finite_gauss_json(capsys):
    code, out, _ = run(capsys, "finite", "gauss", "--q", "3", "--l1", "1", "--l2", "2")
    doc = json.loads(out)
    validate(doc, "gauss")
    assert doc["modulus"] == pytest.approx(9, abs=1e-9)


@pytest.mark.parametrize(
    "argv",
    [
        ["pseries", "--qa", "3", "--symbolic"],
        ["pseries", "--qa", "4", "--z1", "2", "--z2", "1"],
    ],
)
def test_pseries_json(capsys, argv):
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    validate(doc, "pseries")
    if "--z1" in argv:
        assert doc["local_coeff"] == "-8/7"


@pytest.mark.parametrize(
    "argv",
    [
        ["hecke", "mul", "t", "s0", "--format", "json"],
        ["hecke", "theta", "--format", "json", "--", "-1,0"],
        ["hecke", "commutant", "2,0", "--format", "json", "--omega", "-1"],
        ["hecke", "psi", "s1", "--format", "json", "--omega", "-1"],
    ],
)
def test_hecke_json(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    validate(json.loads(out), "hecke")


def test_commutant_is_zero(capsys):
    code, out, _ = run(capsys, "hecke", "commutant", "2,0")
    assert out.strip().endswith("= 0")


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "hecke,dim")
    lines = out.strip().splitlines()
    assert code == 0
    assert {ln.split(":")[0] for ln in lines[:-1]} == {"hecke", "dim"}
    assert lines[-1].startswith("summary:") and " 0 failed" in lines[-1]


def test_verify_injected_fault(capsys):
    code, out, _ = run(capsys, "verify", "--only", "hecke", "--inject-fault")
    assert code == 1
    assert out.strip().splitlines()[-1] == "first failure: hecke: quadratic_relation [omega=1]"
    code, _, _ = run(capsys, "verify", "--only", "hecke")
    assert code == 0


def test_workers_env(monkeypatch, capsys):
    monkeypatch.setenv("LOCALFACTORS_WORKERS", "zero")
    code, _, _ = run(capsys, "verify", "--only", "dim")
    assert code == 2


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "localfactors", "finite", "gauss", "--q", "11"],
        capture_output=True, text=True,
    )
    assert out.returncode == 2
