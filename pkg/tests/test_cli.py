"""End-to-end tests of the command-line interface."""

import json
from fractions import Fraction

import pytest

from g2forge import exterior as ext
from g2forge.aw import standard_aw_frame
from g2forge.cli import main
from g2forge.cubic import b2, q_value
from g2forge.exterior import form_from_json, form_to_json, vol_coefficient, \
    wedge
from g2forge.linalg import SymTensor
from g2forge.scalars import scalar_to_json


def write_form(path, form):
    path.write_text(json.dumps(form_to_json(form)))
    return str(path)


def run_cli(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


# -- run ----------------------------------------------------------------------

def test_run_pairing_suite_json(capsys, awframe):
    rc, out, err = run_cli(
        capsys, "run", "--suite", "pairing", "--seed", "1",
        "--samples", "10000", "--random", "5", "--format", "json")
    assert rc == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert report["seed"] == 1
    (sub,) = report["suites"]
    assert sub["suite"] == "pairing"
    assert sub["pairing"] == "100/3"
    assert sub["first_principles_pairing"] == "760/3"
    assert sub["sign_resolution"] == "intermediate-display"
    assert sub["components"] == {"R": "24", "s3": "-4/9",
                                 "sx2": "-8/3", "sy2": "4"}
    ids = [c["id"] for c in sub["checks"]]
    assert ids == sorted(ids)
    assert "pairing.montecarlo-agreement" in ids
    assert "finished in" in err


def test_run_aw_suite_fails_by_design(capsys, awframe):
    rc, out, err = run_cli(
        capsys, "run", "--suite", "aw", "--seed", "1",
        "--random", "5", "--format", "json")
    assert rc == 1
    report = json.loads(out)
    assert report["passed"] is False
    (sub,) = report["suites"]
    failing = {c["id"] for c in sub["checks"] if c["status"] == "fail"}
    assert "aw.generic-sum-display" in failing
    assert "aw.closed-display" in failing
    assert "aw.pairing-vs-displays" in failing
    # every failing display has a passing corrected twin where one exists
    for cid in list(failing):
        if cid + ".corrected" in {c["id"] for c in sub["checks"]}:
            twin = next(c for c in sub["checks"]
                        if c["id"] == cid + ".corrected")
            assert twin["status"] == "pass"


def test_run_exterior_text_deterministic(capsys):
    args = ("run", "--suite", "exterior", "--seed", "7", "--random", "10")
    rc1, out1, _ = run_cli(capsys, *args)
    rc2, out2, _ = run_cli(capsys, *args)
    assert rc1 == rc2 == 0
    assert out1 == out2
    assert out1.startswith("suite exterior (seed 7)")
    assert out1.rstrip().endswith("result: PASS")


def test_run_rejects_bogus_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["run", "--suite", "nonsense"])
    assert exc.value.code == 2


def test_run_rejects_small_samples(capsys):
    rc, out, err = run_cli(capsys, "run", "--suite", "pairing",
                           "--samples", "100")
    assert rc == 2
    assert "--samples" in err and not out


def test_run_rejects_bad_random(capsys):
    rc, out, err = run_cli(capsys, "run", "--suite", "exterior",
                           "--random", "0")
    assert rc == 2
    assert "--random" in err


def test_run_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("G2FORGE_SEED", "5")
    rc, out, _ = run_cli(capsys, "run", "--suite", "exterior",
                         "--random", "5", "--format", "json")
    assert rc == 0
    assert json.loads(out)["seed"] == 5
    monkeypatch.setenv("G2FORGE_SEED", "pony")
    with pytest.raises(SystemExit):
        main(["run", "--suite", "exterior", "--random", "5"])


def test_run_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    rc, out, err = run_cli(capsys, "run", "--suite", "exterior",
                           "--seed", "3", "--random", "5",
                           "--format", "json", "--output", str(target))
    assert rc == 0
    assert out == ""
    report = json.loads(target.read_text())
    assert report["passed"] is True


# -- eval ---------------------------------------------------------------------

def test_eval_hat_of_psi(capsys, tmp_path, g2frame):
    path = write_form(tmp_path / "psi.json", g2frame.psi)
    rc, out, _ = run_cli(capsys, "eval", "hat", path)
    assert rc == 0
    data = json.loads(out)
    assert data["operation"] == "hat"
    assert form_from_json(data["result"]) == -g2frame.phi


def test_eval_q2_wedges_back_to_q(capsys, tmp_path, g2frame):
    a = g2frame.iso_i_psi(SymTensor.diag([1, -1, 0, 0, 0, 0, 0]))
    path = write_form(tmp_path / "a.json", a)
    rc, out, _ = run_cli(capsys, "eval", "q2", path)
    assert rc == 0
    q2a = form_from_json(json.loads(out)["result"])
    assert vol_coefficient(wedge(q2a, a)) == q_value(a, g2frame)


def test_eval_q_scalar(capsys, tmp_path, g2frame):
    a = g2frame.iso_i_psi(SymTensor.diag([2, -1, -1, 1, 0, -1, 0]))
    path = write_form(tmp_path / "a.json", a)
    rc, out, _ = run_cli(capsys, "eval", "Q", path)
    assert rc == 0
    assert json.loads(out)["result"] == scalar_to_json(q_value(a, g2frame))


def test_eval_p_on_comparison_block(capsys, tmp_path):
    # P of the diagonal comparison form equals the first-principles
    # value of the diagonal su(3) element
    fr = standard_aw_frame()
    path = write_form(tmp_path / "pt.json", fr.phi_tilde)
    rc, out, _ = run_cli(capsys, "eval", "P", path)
    assert rc == 0
    assert json.loads(out)["result"] == scalar_to_json(Fraction(-210))


def test_eval_b2_two_files(capsys, tmp_path, g2frame):
    a1 = g2frame.iso_i_psi(SymTensor.diag([1, -1, 0, 0, 0, 0, 0]))
    a2 = g2frame.iso_i_psi(SymTensor.diag([0, 1, -1, 0, 0, 0, 0]))
    p1 = write_form(tmp_path / "a1.json", a1)
    p2 = write_form(tmp_path / "a2.json", a2)
    rc, out, _ = run_cli(capsys, "eval", "b2", p1, p2)
    assert rc == 0
    assert form_from_json(json.loads(out)["result"]) == b2(a1, a2, g2frame)
    rc, _, err = run_cli(capsys, "eval", "b2", p1)
    assert rc == 2 and "two" in err


def test_eval_project(capsys, tmp_path, g2frame):
    path = write_form(tmp_path / "phi.json", g2frame.phi)
    rc, out, _ = run_cli(capsys, "eval", "project", path)
    assert rc == 0
    parts = json.loads(out)["result"]
    assert sorted(parts) == ["1", "27", "7"]
    assert form_from_json(parts["1"]) == g2frame.phi
    assert form_from_json(parts["7"]).is_zero()
    two = write_form(tmp_path / "b.json", ext.blade([1, 2]))
    rc, out, _ = run_cli(capsys, "eval", "project", two)
    assert rc == 0
    assert sorted(json.loads(out)["result"]) == ["14", "7"]
    one = write_form(tmp_path / "v.json", ext.vector(1))
    rc, _, err = run_cli(capsys, "eval", "project", one)
    assert rc == 2 and "grade" in err


def test_eval_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc, _, err = run_cli(capsys, "eval", "hat", str(bad))
    assert rc == 2 and "not valid JSON" in err
    rc, _, err = run_cli(capsys, "eval", "hat", str(tmp_path / "missing.json"))
    assert rc == 2 and "cannot read" in err
    malformed = tmp_path / "malformed.json"
    malformed.write_text(json.dumps({"grade": 9, "terms": {}}))
    rc, _, err = run_cli(capsys, "eval", "hat", str(malformed))
    assert rc == 2


def test_eval_precondition_violations(capsys, tmp_path, g2frame):
    psi = write_form(tmp_path / "psi.json", g2frame.psi)
    rc, _, err = run_cli(capsys, "eval", "q2", psi)
    assert rc == 2 and "TypeDecompositionError" in err
    phi = write_form(tmp_path / "phi.json", g2frame.phi)
    rc, _, err = run_cli(capsys, "eval", "Q", phi)
    assert rc == 2 and "GradeError" in err


def test_eval_output_file(capsys, tmp_path, g2frame):
    path = write_form(tmp_path / "psi.json", g2frame.psi)
    target = tmp_path / "out.json"
    rc, out, _ = run_cli(capsys, "eval", "hat", path,
                         "--output", str(target))
    assert rc == 0 and out == ""
    data = json.loads(target.read_text())
    assert form_from_json(data["result"]) == -g2frame.phi
