import csv
import io
import json
import subprocess
import sys

import pytest

from brieskorn.cli import CSV_COLUMNS, RunConfig, main, parse_input
from brieskorn.floer import InvariantBundle
from brieskorn.seifert import SeifertData


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_input_examples():
    assert parse_input("sigma(2,3,5)") == SeifertData((2, 3, 5), (1, 1, 1), -1)
    with pytest.raises(ValueError, match="coprime"):
        parse_input("sigma(2,4,5)")
    assert parse_input("sweep --max-product 30") == [(2, 3, 5)]
    with pytest.raises(SyntaxError):
        parse_input("sweep --max-product")
    with pytest.raises(SyntaxError, match="position"):
        parse_input("sigma(2,3,,5)")


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(verb="plot")
    with pytest.raises(ValueError):
        RunConfig(verb="sweep", max_product=0)
    with pytest.raises(ValueError):
        RunConfig(verb="audit", fmt="xml")


def test_audit_json(capsys):
    code, out, _ = run_cli(capsys, "audit", "sigma(2,3,7)", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"].startswith("brieskorn.bundle/")
    assert payload["lambda"] == 1 and abs(payload["sign_k"]) == 8
    assert sorted(payload["ranks"][:2]) == [0, 1]
    assert payload["nu"] in (-1, 1)
    bundle = InvariantBundle.from_json(payload)
    assert InvariantBundle.from_json(json.loads(json.dumps(bundle.to_json()))) == bundle


def test_audit_strict_exit_code(capsys):
    code, out, _ = run_cli(capsys, "audit", "sigma(2,3,5)")
    assert code == 0 and "tension" in out
    code, _, _ = run_cli(capsys, "audit", "sigma(2,3,5)", "--strict")
    assert code == 2
    code, _, _ = run_cli(capsys, "audit", "sigma(2,3,5)", "--mirror", "--strict")
    assert code == 0


def test_reps_table(capsys):
    code, out, _ = run_cli(capsys, "reps", "sigma(2,3,5)")
    lines = out.strip().splitlines()
    assert code == 0
    assert "lambda=1" in lines[0]
    assert len(lines) == 2 + 2  # title, header, two vectors
    assert lines[2].split()[:4] == ["-1", "1", "1", "2"]


def test_reps_realize_json(capsys):
    code, out, _ = run_cli(capsys, "reps", "sigma(2,3,7)", "--realize", "--json")
    payload = json.loads(out)
    assert code == 0 and len(payload["vectors"]) == 2
    v = payload["vectors"][0]
    assert set(v["images"]) == {"h", "x", "y", "z"}
    assert v["rho"][0] == 0.0
    assert len(v["rho"]) == 4 and all(isinstance(c, float) for c in v["rho"])


def test_knot_export(capsys):
    code, out, _ = run_cli(capsys, "knot", "sigma(2,3,5)", "--export-pd")
    assert code == 0
    assert "X(" in out and "-t^10+t^6+t^4" in out
    code, out, _ = run_cli(capsys, "knot", "sigma(2,3,5)", "--export-pd", "--json", "--mirror")
    payload = json.loads(out)
    assert payload["signature"] == 8 and payload["determinant"] == 1
    assert len(payload["pd"]) == payload["crossings"] and len(payload["gauss"]) == 2 * payload["crossings"]


def test_sweep_csv(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--max-product", "100")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == CSV_COLUMNS
    assert [tuple(map(int, r[:3])) for r in rows[1:]] == [
        (2, 3, 5), (2, 3, 7), (2, 3, 11), (2, 3, 13), (2, 5, 7), (2, 5, 9), (3, 4, 5), (3, 4, 7)
    ]


def test_empty_sweep(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--max-product", "29")
    assert code == 0
    assert out == ",".join(CSV_COLUMNS) + "\n"


def test_sweep_json_round_trip(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--max-product", "60", "--json")
    payload = json.loads(out)
    bundles = [InvariantBundle.from_json({"schema": payload["schema"], **b}) for b in payload["bundles"]]
    assert [b.to_json() for b in bundles] == payload["bundles"]


def test_output_is_deterministic(capsys, monkeypatch):
    outs = []
    for workers in ("1", "2"):
        monkeypatch.setenv("BRIESKORN_WORKERS", workers)
        outs.append(run_cli(capsys, "sweep", "--max-product", "120")[1])
    outs.append(run_cli(capsys, "sweep", "--max-product", "120")[1])
    assert outs[0] == outs[1] == outs[2]
    a = run_cli(capsys, "reps", "sigma(3,5,7)", "--realize", "--json")[1]
    b = run_cli(capsys, "reps", "sigma(3,5,7)", "--realize", "--json")[1]
    assert a == b


def test_cobordism_verb(capsys):
    code, out, _ = run_cli(capsys, "cobordism", "sigma(2,3,5)", "--claim")
    assert code == 0 and "refuted" in out
    code, out, _ = run_cli(capsys, "cobordism", "sigma(2,3,5,7)", "--json")
    assert json.loads(out)["nu"] == 0


@pytest.mark.parametrize(
    "argv, code",
    [
        (["reps", "sigma(2,4,5)"], 1),
        (["audit", "sigma(2,3;5)"], 1),
        (["sweep", "--max-product", "0"], 1),
        (["knot", "sigma(2,3,5,7)"], 1),
    ],
)
def test_error_exit_codes(capsys, argv, code):
    got, _, err = run_cli(capsys, *argv)
    assert got == code and err.startswith("error")


def test_resource_limit_exit_code(capsys, monkeypatch):
    import brieskorn.floer as floer

    def boom(*a, **k):
        from brieskorn.errors import ResourceLimit
        raise ResourceLimit("budget")

    monkeypatch.setattr(floer, "compute_bundle", boom)
    monkeypatch.setattr("brieskorn.cli.compute_bundle", boom)
    assert run_cli(capsys, "audit", "sigma(2,3,5)")[0] == 3


def test_theorem_violation_exit_code(capsys, monkeypatch):
    from brieskorn.errors import TheoremViolation

    def bad(*a, **k):
        raise TheoremViolation("ranks", lam=1, sign_k=4)

    monkeypatch.setattr("brieskorn.cli.compute_bundle", bad)
    assert run_cli(capsys, "audit", "sigma(2,3,5)")[0] == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "brieskorn.cli", "reps", "sigma(2,3,7)"], capture_output=True, text=True
    )
    assert res.returncode == 0 and "lambda=1" in res.stdout
