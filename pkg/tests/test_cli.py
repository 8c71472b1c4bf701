import json

import pytest

from qaw.battery import Report, verify
from qaw.cli import main
from qaw.families import FamilyParams, from_params
from qaw.dsl import load
from qaw.groebner import complete, dimension_matrix
from qaw.oracle import path_space_dimensions


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def quiv(tmp_path, capsys):
    path = tmp_path / "pres.quiv"
    code, _, _ = run(capsys, "family", "spherical", "--m", "1", "--mp", "1", "--a", "2", "--b", "1", "--field", "Q",
                     "--emit", str(path))
    assert code == 0
    return str(path)


def test_family_emit_stdout(capsys):
    code, out, _ = run(capsys, "family", "hsa", "--m", "2", "--lambda", "1", "--emit", "-")
    assert code == 0 and out.startswith("name: hsa(m=2);") and "H2b: alpha*beta*nu = rho*omega*nu;" in out


def test_basis_json_matches_oracle(quiv, capsys):
    code, out, _ = run(capsys, "basis", quiv, "--json")
    data = json.loads(out)
    dims, _ = path_space_dimensions(load(quiv))
    assert code == 0 and data["dims"] == dims and data["total"] == 40


def test_nf(quiv, capsys):
    assert run(capsys, "nf", quiv, "--expr", "beta*nu*delta*rho")[1].strip() == "0"
    assert run(capsys, "nf", quiv, "--expr", "beta*nu*delta")[1].strip() == "2*beta*gamma*sigma"


def test_resolve(quiv, capsys):
    code, out, _ = run(capsys, "resolve", quiv, "--vertex", "b1", "--steps", "4", "--json")
    data = json.loads(out)
    assert code == 0 and data["dim_vectors"][-1] == [0, 1, 0, 0, 0, 0] and data["period"] == 4


def test_cartan_socle_symmetric(quiv, capsys):
    code, out, _ = run(capsys, "cartan", quiv, "--json")
    assert code == 0 and json.loads(out)["cartan"][0] == [2, 1, 2, 1, 1, 1]
    code, out, _ = run(capsys, "socle", quiv, "--vertex", "b1")
    assert code == 0 and "beta*gamma*sigma*alpha" in out
    assert run(capsys, "symmetric", quiv)[0] == 0


def test_symmetric_fails_on_singular(tmp_path, capsys):
    path = tmp_path / "sing.quiv"
    run(capsys, "family", "spherical", "--m", "1", "--mp", "1", "--emit", str(path))
    code, out, _ = run(capsys, "symmetric", str(path))
    assert code == 1 and "none" in out


def test_build_minimal(quiv, capsys):
    code, out, _ = run(capsys, "build", quiv, "--minimal", "--certify", "--json")
    data = json.loads(out)
    assert code == 0 and data["confluent"] and data["finite"] and len(data["minimal_relations"]) == 8


def test_verify_spherical_all_pass(capsys):
    code, out, _ = run(capsys, "verify", "--family", "spherical", "--m", "1", "--mp", "1", "--a", "2", "--b", "1",
                       "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["summary"]["dimension"] == 40
    assert set(data["summary"]["periods"].values()) == {4}


def test_verify_hsa(capsys):
    code, out, _ = run(capsys, "verify", "--family", "hsa", "--m", "2", "--lambda", "1", "--field", "Q", "--json")
    data = json.loads(out)
    assert code == 0 and data["summary"]["cartan"][0] == [3, 2, 3, 2, 2, 2]


def test_verify_parameter_error(capsys):
    code, _, err = run(capsys, "verify", "--family", "spherical", "--m", "1", "--mp", "1", "--a", "0", "--b", "1")
    assert code == 2 and "nonzero" in err


def test_verify_singular_is_expected_fail(capsys):
    code, out, err = run(capsys, "verify", "--family", "spherical", "--m", "1", "--mp", "1", "--a", "1", "--b", "1")
    assert code == 1
    assert "failure detected" in out and "first failing check: symmetric" in err


def test_input_errors(tmp_path, capsys):
    assert run(capsys, "basis", str(tmp_path / "missing.quiv"))[0] == 2
    bad = tmp_path / "bad.quiv"
    bad.write_text("quiver { vertices: a; arrows: x: a -> b; }")
    assert run(capsys, "basis", str(bad))[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2
    assert run(capsys, "family", "spherical", "--field", "F4")[0] == 2


def test_verify_json_is_deterministic(capsys, monkeypatch):
    args = ["verify", "--family", "hsa", "--m", "2", "--json"]
    first = run(capsys, *args)[1]
    monkeypatch.setenv("QAW_THREADS", "2")
    assert run(capsys, *args)[1] == first
    assert "timings" not in json.loads(first)
    assert "timings" in json.loads(run(capsys, *args, "--timings")[1])


def test_report_round_trip_and_unique_checks():
    fp = FamilyParams("almost_spherical", {"m": 1, "mp": 1, "np": 2}, {"a": 1, "b": 1})
    rep = verify(from_params(fp), fp)
    names = [c["name"] for c in rep.checks]
    assert len(names) == len(set(names))
    for expected in ("zero_relations", "long_path_annihilation", "extra_zero_relations", "loop_products_vanish",
                     "socle_word_proportional"):
        assert expected in names
    data = json.loads(json.dumps(rep.to_json()))
    again = Report.from_json(data)
    assert again.to_json() == rep.to_json()
    assert rep.passed


def test_report_rejects_duplicate_checks():
    rep = Report({}, 0)
    rep.add("x", True)
    with pytest.raises(ValueError):
        rep.add("x", False)


def test_verify_from_file_skips_family_battery(quiv):
    rep = verify(load(quiv))
    assert rep.passed and "zero_relations" not in [c["name"] for c in rep.checks]
    assert dimension_matrix(complete(load(quiv)))[0] == [2, 1, 2, 1, 1, 1]
