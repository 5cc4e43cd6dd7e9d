import json

import numpy as np
import pytest

from umbilic import cli


def write_doc(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def sphere(center, radius):
    return {"type": "sphere", "center": center, "radius": radius}


def hyperplane(normal, offset):
    return {"type": "hyperplane", "normal": normal, "offset": offset}


def test_encode_example(tmp_path, capsys):
    doc = {"context": {"n": 3, "k": 2}, "objects": [sphere([0, 0, 0, 0], 1.0)]}
    code, out, err = run(capsys, ["encode", "--input", write_doc(tmp_path, "j.json", doc)])
    assert code == 0
    payload = json.loads(out)
    assert np.allclose(payload["basis"], [[0, 0, 0, 0, 0, 1]])
    assert np.allclose(payload["gram"], [[1.0]])
    assert payload["gram_residual"] < 1e-12


def test_encode_malformed_input(tmp_path, capsys):
    doc = {"context": {"n": 3, "k": 2}, "objects": [sphere([0, 0, 0, 0], -1.0)]}
    code, out, err = run(capsys, ["encode", "--input", write_doc(tmp_path, "j.json", doc)])
    assert code == 2
    assert "radius must be positive" in json.loads(err)["error"]


def test_missing_input_file(capsys):
    code, out, err = run(capsys, ["encode", "--input", "/nonexistent/path.json"])
    assert code == 2
    assert "cannot read input file" in json.loads(err)["error"]


def test_invalid_json_input(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, out, err = run(capsys, ["encode", "--input", str(path)])
    assert code == 2


def test_schema_violation(tmp_path, capsys):
    doc = {"context": {"n": 3, "k": 2}, "objects": []}
    code, out, err = run(capsys, ["encode", "--input", write_doc(tmp_path, "j.json", doc)])
    assert code == 2
    assert "validation" in json.loads(err)["error"]


def test_congruent_true_and_false(tmp_path, capsys):
    doc = {
        "context": {"n": 3, "k": 2},
        "a": [sphere([0, 1, 0, 0], 1.0)],
        "b": [sphere([7, 2, 0, 0], 2.0)],
    }
    code, out, _ = run(capsys, ["congruent", "--input", write_doc(tmp_path, "j.json", doc)])
    assert code == 0
    payload = json.loads(out)
    assert payload["congruent"] is True
    assert payload["witness"] is None

    doc["b"] = [sphere([0, 2, 0, 0], 1.0)]
    code, out, _ = run(capsys, ["congruent", "--input", write_doc(tmp_path, "k.json", doc)])
    assert code == 0
    assert json.loads(out)["congruent"] is False


def test_congruent_family_members(tmp_path, capsys):
    # same offset parameter but different radii: not congruent
    a_center = [np.sqrt(2.0), 0.0, 0.0, 1.0]
    n_c = [1 / np.sqrt(2.0), 0.0, 1 / np.sqrt(2.0), 0.0]
    doc = {
        "context": {"n": 3, "k": 2},
        "a": [sphere(a_center, 1.0), hyperplane(n_c, 1.0)],
        "b": [sphere(a_center, 0.5), hyperplane(n_c, 1.0)],
    }
    code, out, _ = run(capsys, ["congruent", "--input", write_doc(tmp_path, "j.json", doc)])
    assert code == 0
    assert json.loads(out)["congruent"] is False


def test_congruent_witness(tmp_path, capsys):
    doc = {
        "context": {"n": 3, "k": 2},
        "a": [sphere([0, 1, 0, 0], 1.0)],
        "b": [sphere([7, 2, 0, 0], 2.0)],
    }
    code, out, _ = run(
        capsys, ["congruent", "--witness", "--input", write_doc(tmp_path, "j.json", doc)]
    )
    assert code == 0
    payload = json.loads(out)
    w = payload["witness"]
    assert w is not None
    assert w["lorentz_residual"] < 1e-8
    assert w["block_residual"] < 1e-8
    assert w["subspace_distance"] < 1e-8
    assert np.asarray(w["matrix"]).shape == (6, 6)


def test_congruent_not_substantial_exit_code(tmp_path, capsys):
    doc = {
        "context": {"n": 3, "k": 2},
        "a": [sphere([0, 0, 0, 0], 1.0)],
        "b": [sphere([0, 0, 0, 0], 2.0)],
    }
    code, out, err = run(capsys, ["congruent", "--input", write_doc(tmp_path, "j.json", doc)])
    assert code == 3
    assert json.loads(err)["kind"] == "NotSubstantial"


def test_classify_substantial_sphere(tmp_path, capsys):
    doc = {"context": {"n": 3, "k": 2}, "objects": [sphere([0, 1, 0, 0], 1.0)]}
    code, out, _ = run(capsys, ["classify", "--input", write_doc(tmp_path, "j.json", doc)])
    assert code == 0
    payload = json.loads(out)
    assert payload["substantial"] is True
    assert payload["codim"] == 1
    assert np.allclose(payload["invariant"]["perp_eigs"], [1.0])
    assert payload["topology"]["kind"] == "EUCLIDEAN"
    assert payload["topology"]["m"] == 3
    assert payload["orbit"]["acting_block"] == "BOTH"
    canon = payload["canonical"]
    assert canon[0]["type"] == "sphere"
    assert np.allclose(canon[0]["center"], [0, 0, 0, 1])
    assert abs(canon[0]["radius"] - 1.0) < 1e-12


def test_classify_totally_geodesic(tmp_path, capsys):
    doc = {"context": {"n": 3, "k": 2}, "objects": [sphere([0, 0, 0, 0], 1.0)]}
    code, out, _ = run(capsys, ["classify", "--input", write_doc(tmp_path, "j.json", doc)])
    assert code == 0
    payload = json.loads(out)
    assert payload["substantial"] is False
    assert payload["orbit"] is None
    assert payload["canonical"] is None
    assert payload["topology"]["kind"] == "PRODUCT"


def test_classify_codim2_canonical(tmp_path, capsys):
    doc = {
        "context": {"n": 3, "k": 2},
        "objects": [
            sphere([np.sqrt(2.0), 0.0, 0.0, 1.0], 1.0),
            hyperplane([1 / np.sqrt(2.0), 0.0, 1 / np.sqrt(2.0), 0.0], 1.0),
        ],
    }
    code, out, _ = run(capsys, ["classify", "--input", write_doc(tmp_path, "j.json", doc)])
    assert code == 0
    payload = json.loads(out)
    assert payload["codim"] == 2
    assert np.abs(np.asarray(payload["invariant"]["perp_eigs"]) - [0.5, 1.0]).max() < 1e-9
    canon = payload["canonical"]
    assert canon is not None and len(canon) == 2


def test_profile_csv_format(tmp_path, capsys):
    doc = {"context": {"n": 2, "k": 2}, "objects": [sphere([0, 0, 1], 2.0)]}
    code, out, _ = run(
        capsys,
        [
            "profile",
            "--input",
            write_doc(tmp_path, "j.json", doc),
            "--samples",
            "4",
            "--format",
            "csv",
        ],
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "theta,x_1,x_2,x_3,slice_angle,membership_residual"
    assert len(lines) == 5
    for line in lines[1:]:
        cells = line.split(",")
        assert len(cells) == 6
        assert float(cells[-1]) < 1e-9
    assert abs(float(lines[-1].split(",")[0]) - np.pi) < 1e-12
    assert out.endswith("\n") and "\r" not in out


def test_profile_csv_spherical_endpoints(tmp_path, capsys):
    doc = {"context": {"n": 2, "k": 2}, "objects": [sphere([0, 0, 1], 0.5)]}
    code, out, _ = run(
        capsys,
        [
            "profile",
            "--input",
            write_doc(tmp_path, "j.json", doc),
            "--samples",
            "3",
            "--format",
            "csv",
        ],
    )
    assert code == 0
    lines = out.splitlines()[1:]
    assert abs(float(lines[0].split(",")[0]) + 2 * np.pi / 3) < 1e-12
    assert abs(float(lines[-1].split(",")[0]) - 2 * np.pi / 3) < 1e-12


def test_profile_json_and_out_file(tmp_path, capsys):
    doc = {"context": {"n": 2, "k": 2}, "objects": [sphere([0, 0, 1], 1.0)]}
    out_path = tmp_path / "rows.csv"
    code, out, _ = run(
        capsys,
        [
            "profile",
            "--input",
            write_doc(tmp_path, "j.json", doc),
            "--samples",
            "4",
            "--format",
            "csv",
            "--out",
            str(out_path),
        ],
    )
    assert code == 0 and out == ""
    data = out_path.read_bytes()
    assert b"\r" not in data and data.endswith(b"\n")

    code, out, _ = run(
        capsys,
        ["profile", "--input", write_doc(tmp_path, "j.json", doc), "--samples", "4"],
    )
    payload = json.loads(out)
    assert payload["case"] == "PARABOLIC"
    assert len(payload["rows"]) == 4


def test_profile_wrong_context(tmp_path, capsys):
    doc = {"context": {"n": 3, "k": 2}, "objects": [sphere([0, 0, 0, 1], 1.0)]}
    code, out, err = run(capsys, ["profile", "--input", write_doc(tmp_path, "j.json", doc)])
    assert code == 2
    assert json.loads(err)["kind"] == "WrongContext"


def test_profile_not_substantial(tmp_path, capsys):
    doc = {"context": {"n": 2, "k": 2}, "objects": [sphere([1, 0, 0], 1.0)]}
    code, out, err = run(capsys, ["profile", "--input", write_doc(tmp_path, "j.json", doc)])
    assert code == 3
    assert json.loads(err)["kind"] == "NotSubstantial"


def test_tol_env_and_flag(tmp_path, capsys, monkeypatch):
    # a slightly off-orthogonal pair passes with a loose tolerance only
    eps = 1e-6
    doc = {
        "context": {"n": 3, "k": 2},
        "objects": [
            sphere([0.0, 0.0, 0.0, 1.0], 1.0),
            hyperplane([0.0, 1.0, 0.0, 0.0], eps),
        ],
    }
    path = write_doc(tmp_path, "j.json", doc)
    code, _, err = run(capsys, ["encode", "--input", path])
    assert code == 2

    monkeypatch.setenv("UMBILIC_TOL", "1e-3")
    code, out, _ = run(capsys, ["encode", "--input", path])
    assert code == 0

    # explicit flag beats the environment
    code, _, err = run(capsys, ["encode", "--input", path, "--tol", "1e-9"])
    assert code == 2

    monkeypatch.setenv("UMBILIC_TOL", "junk")
    code, _, err = run(capsys, ["encode", "--input", path])
    assert code == 2
    assert "UMBILIC_TOL" in json.loads(err)["error"]


def test_selftest_deterministic(capsys):
    code, out1, _ = run(capsys, ["selftest", "--seed", "0"])
    assert code == 0
    code, out2, _ = run(capsys, ["selftest", "--seed", "0"])
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["passed"] is True
    assert all(s["passed"] for s in payload["suites"])


def test_json_output_deterministic(tmp_path, capsys):
    doc = {"context": {"n": 3, "k": 2}, "objects": [sphere([0, 1, 0, 0], 1.0)]}
    path = write_doc(tmp_path, "j.json", doc)
    _, out1, _ = run(capsys, ["classify", "--input", path])
    _, out2, _ = run(capsys, ["classify", "--input", path])
    assert out1 == out2
