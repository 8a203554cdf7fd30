import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from equicohom.bundle import fixture_path, load_bundle, parse_bundle, validate_bundle
from equicohom.cli import EXIT_HYPOTHESIS, EXIT_INVALID, EXIT_PASS, main, run
from equicohom.errors import ParseError


def cli(*args):
    code, report, text = run(list(args))
    return code, report, text


@pytest.mark.parametrize("name", FIXTURES)
def test_validate_all_fixtures(name):
    code, report, _ = cli("validate", "--bundle", str(fixture_path(name)))
    assert code == EXIT_PASS
    assert report["status"] == "pass"


def test_cohomology_report():
    code, report, _ = cli("cohomology", "--bundle", str(fixture_path("circle_twisted")))
    assert code == EXIT_PASS
    assert report["cohomology"]["1"] == {"group": "Z/2", "rank": 0, "torsion": [2]}


def test_compare_exit_code_on_hypothesis_failure():
    code, report, _ = cli("compare", "--bundle", str(fixture_path("free_z3_cycle")))
    assert code == EXIT_HYPOTHESIS
    assert "G-connected" in report["error"]
    code, _, _ = cli("cohomology", "--bundle", str(fixture_path("free_z3_cycle")), "--flavor", "bredon")
    assert code == EXIT_HYPOTHESIS


@pytest.mark.parametrize("command", ["compare", "classify", "homotopy"])
def test_property_commands_pass(command):
    code, report, _ = cli(command, "--bundle", str(fixture_path("theta_z4")), "--samples", "3")
    assert code == EXIT_PASS, report


def test_degree_out_of_range():
    code, report, _ = cli("cohomology", "--bundle", str(fixture_path("theta_z2")), "--degree", "5")
    assert code == EXIT_INVALID


def test_deterministic_output(tmp_path):
    args = ["classify", "--bundle", str(fixture_path("theta_z2")), "--samples", "4", "--seed", "3"]
    first = cli(*args)[2]
    second = cli(*args)[2]
    assert first == second
    out = tmp_path / "r.json"
    cli(*args, "--json-out", str(out))
    assert out.read_text() == first


def test_homotopy_from_file(tmp_path):
    from conftest import complex_of
    import random
    from equicohom import classify as cl
    C = complex_of("theta_z4")
    rng = random.Random(0)
    f0 = cl.random_cocycle(C, 1, rng)
    h = C.random_cochain(0, rng)
    f1 = f0 - C.coboundary(h)
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"f0": list(f0.vector), "f1": list(f1.vector), "h": list(h.vector)}))
    code, report, _ = cli("homotopy", "--bundle", str(fixture_path("theta_z4")), "--degree", "1",
                          "--cochains", str(path))
    assert code == EXIT_PASS, report
    path.write_text(json.dumps({"f0": list(f0.vector), "f1": list((f1 + f1).vector), "h": list(h.vector)}))
    code, report, _ = cli("homotopy", "--bundle", str(fixture_path("theta_z4")), "--degree", "1",
                          "--cochains", str(path))
    assert code == EXIT_INVALID
    assert "NotCohomologous" in report["error"]


def _data(name):
    return json.loads(fixture_path(name).read_text())


def test_invalid_bundles(tmp_path):
    broken = _data("delta2_z3")
    broken["twisting"]["uniform"]["02"] = "e"
    checks = validate_bundle(parse_bundle(broken))
    assert not checks["twisting"]["pass"] and checks["twisting"]["witness"]
    path = tmp_path / "b.json"
    path.write_text(json.dumps(broken))
    code, report, _ = cli("validate", "--bundle", str(path))
    assert code == EXIT_INVALID and report["status"] == "fail"

    bad_faces = _data("delta2_z3")
    bad_faces["simplices"]["2"]["012"] = ["12", "01", "02"]
    assert not validate_bundle(parse_bundle(bad_faces))["simplicial_identities"]["pass"]


def test_parse_errors(tmp_path):
    path = tmp_path / "x.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_bundle(path)
    data = _data("theta_z2")
    data["coefficients"]["M0"] = {"constant": "Q"}
    with pytest.raises(ParseError) as exc:
        parse_bundle(data)
    assert "M0" in str(exc.value.location)
    path.write_text(json.dumps(data))
    assert cli("validate", "--bundle", str(path))[0] == EXIT_INVALID


def test_entry_point_subprocess():
    proc = subprocess.run([sys.executable, "-m", "equicohom.cli", "cohomology", "--bundle",
                           str(fixture_path("circle_trivial"))], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["cohomology"]["0"]["group"] == "Z"


def test_main_writes_stdout(capsys):
    assert main(["validate", "--bundle", str(fixture_path("cone_z2"))]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "pass"
