import json
import subprocess
import sys

import numpy as np
import pytest

from choilab import io
from choilab.cli import main
from choilab.duality import DualityState, choi_forward, forward, j_forward
from choilab.errors import DimensionError, SchemaError, VariantError
from choilab.jordan import Orientation
from choilab.linalg import max_entangled
from choilab.maps import QuantumMap, identity_map, precompose_transpose, random_map, transpose_map

PHI2 = np.outer(max_entangled(2), max_entangled(2))


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, obj in {
        "id": identity_map(2),
        "T": transpose_map(2),
        "arb": random_map("arbitrary", 2, 3, 1),
        "C": choi_forward(random_map("arbitrary", 2, 3, 2)),
    }.items():
        p = tmp_path / f"{name}.json"
        io.save(obj, p)
        paths[name] = p
    return paths


def _stdout_json(capsys):
    out = capsys.readouterr().out
    return json.loads(out)


# --- file formats -----------------------------------------------------------


def test_matrix_encoding_round_trip_is_bit_identical():
    rng = np.random.default_rng(0)
    m = rng.standard_normal((3, 4)) * 10.0 ** rng.integers(-300, 300, (3, 4)) + 1j * rng.standard_normal((3, 4))
    back = io.decode_matrix(json.loads(json.dumps(io.encode_matrix(m))))
    assert np.array_equal(back.view(np.float64), m.view(np.float64))


def test_map_file_round_trip():
    for phi in (random_map("cp", 2, 3, 0), random_map("arbitrary", 3, 2, 1), precompose_transpose(identity_map(2))):
        text = io.dumps(io.to_dict(phi))
        back = io.loads(text)
        assert np.array_equal(back.transfer, phi.transfer)
        assert back.orientation_a is phi.orientation_a
        assert io.dumps(io.to_dict(back)) == text
    assert io.loads(io.dumps(io.to_dict(precompose_transpose(identity_map(2))))).orientation_a is Orientation.REVERSE


def test_state_file_round_trip():
    s = forward(random_map("arbitrary", 2, 3, 5), "JstarC")
    text = io.dumps(io.to_dict(s))
    back = io.loads(text)
    assert back.variant is s.variant and back.dual_a and not back.dual_b
    assert np.array_equal(back.matrix, s.matrix)
    assert io.dumps(io.to_dict(back)) == text


def test_map_file_layout():
    d = io.map_to_dict(identity_map(2))
    assert d["schema"] == "choilab/map/v1" and d["repr"] == "kraus"
    assert d["data"] == [[[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]]
    t = io.map_to_dict(transpose_map(2))
    assert t["repr"] == "transfer" and t["data"][1][2] == [1.0, 0.0]


@pytest.mark.parametrize(
    "doc,exc",
    [
        ({"d_a": 2}, SchemaError),
        ({"schema": "choilab/map/v2"}, SchemaError),
        ({"schema": "choilab/map/v1", "d_a": 2, "d_b": 2, "repr": "choi", "data": []}, SchemaError),
        ({"schema": "choilab/map/v1", "d_a": "2", "d_b": 2, "repr": "transfer", "data": []}, SchemaError),
        ({"schema": "choilab/map/v1", "d_a": 2, "d_b": 2, "repr": "transfer", "data": [[1, 2], [3]]}, SchemaError),
        ({"schema": "choilab/map/v1", "d_a": 2, "d_b": 2, "repr": "transfer", "data": [[[1, 0]]]}, DimensionError),
        ({"schema": "choilab/map/v1", "d_a": 0, "d_b": 2, "repr": "transfer", "data": [[[1, 0]]]}, DimensionError),
        ({"schema": "choilab/state/v1", "d_a": 1, "d_b": 1, "variant": "Q", "matrix": [[[1, 0]]]}, VariantError),
        (
            {"schema": "choilab/state/v1", "d_a": 1, "d_b": 1, "variant": "J", "dual_a": True, "matrix": [[[1, 0]]]},
            VariantError,
        ),
        ({"schema": "choilab/state/v1", "d_a": 1, "d_b": 2, "variant": "J", "matrix": [[[1, 0]]]}, DimensionError),
    ],
)
def test_malformed_documents(doc, exc):
    with pytest.raises(exc):
        io.loads(json.dumps(doc))


def test_non_json_and_non_object():
    with pytest.raises(SchemaError):
        io.loads("{oops")
    with pytest.raises(SchemaError):
        io.loads("[1, 2]")
    with pytest.raises(SchemaError):
        io.load("/nonexistent/file.json")


# --- convert ----------------------------------------------------------------


def test_convert_identity_kraus_to_c(files, tmp_path):
    out = tmp_path / "c.json"
    assert main(["convert", str(files["id"]), "--from", "kraus", "--to", "C", "-o", str(out)]) == 0
    s = io.load(out)
    assert s.variant.value == "C" and np.array_equal(s.matrix, PHI2.astype(complex))


def test_convert_c_j_c_round_trip(files, tmp_path):
    j, c2 = tmp_path / "j.json", tmp_path / "c2.json"
    assert main(["convert", str(files["C"]), "--to", "J", "-o", str(j)]) == 0
    assert main(["convert", str(j), "--from", "J", "--to", "C", "-o", str(c2)]) == 0
    a, b = io.load(files["C"]), io.load(c2)
    assert np.abs(a.matrix - b.matrix).max() < 1e-12
    assert c2.read_text() == files["C"].read_text()


def test_convert_map_state_map_round_trip(files, tmp_path):
    s, m = tmp_path / "s.json", tmp_path / "m.json"
    for variant in ("J", "C", "CJstar", "JstarC"):
        assert main(["convert", str(files["arb"]), "--to", variant, "-o", str(s)]) == 0
        assert main(["convert", str(s), "--from", variant, "--to", "transfer", "-o", str(m)]) == 0
        assert io.load(m).allclose(io.load(files["arb"]), 1e-12)


def test_convert_to_kraus(files, tmp_path, capsys):
    cp = tmp_path / "cp.json"
    io.save(QuantumMap(2, 2, random_map("cp", 2, 2, 3).transfer), cp)
    out = tmp_path / "k.json"
    assert main(["convert", str(cp), "--to", "kraus", "-o", str(out)]) == 0
    assert io.load(out).allclose(io.load(cp), 1e-10)
    assert main(["convert", str(files["T"]), "--to", "kraus"]) == 1
    assert "not CP" in capsys.readouterr().err


def test_convert_error_codes(files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["convert", str(bad), "--to", "C"]) == 2
    assert main(["convert", str(files["C"]), "--from", "J", "--to", "C"]) == 4
    assert main(["convert", str(files["id"]), "--from", "JstarC", "--to", "C"]) == 4
    wrong = tmp_path / "wrong.json"
    doc = io.map_to_dict(transpose_map(2))
    doc["d_b"] = 3
    wrong.write_text(json.dumps(doc))
    assert main(["convert", str(wrong), "--to", "C"]) == 3
    with pytest.raises(SystemExit) as e:
        main(["convert", str(files["id"]), "--to", "K"])
    assert e.value.code == 2


def test_convert_to_stdout_is_single_document(files, capsys):
    assert main(["convert", str(files["id"]), "--to", "J"]) == 0
    doc = _stdout_json(capsys)
    assert doc["schema"] == "choilab/state/v1" and doc["variant"] == "J"


# --- check ------------------------------------------------------------------


def test_check_transpose_map(files, capsys):
    assert main(["check", str(files["T"]), "cp"]) == 1
    doc = _stdout_json(capsys)
    assert doc["schema"] == "choilab/report/v1"
    rep = doc["report"]
    assert rep["verdict"] == "Fails" and abs(rep["witness_value"] + 1) < 1e-9
    assert "eigenvector" in rep["witness_data"]
    assert main(["check", str(files["T"]), "popt"]) == 0
    rep = _stdout_json(capsys)["report"]
    assert rep["verdict"] == "Holds" and rep["witness_value"] >= -1e-8


def test_check_identity(files, capsys):
    assert main(["check", str(files["id"]), "trace-preserving"]) == 0
    assert main(["check", str(files["id"]), "co-cp"]) == 1
    assert main(["check", str(files["id"]), "hermitian"]) == 0
    assert main(["check", str(files["id"]), "ppt"]) == 1
    capsys.readouterr()


def test_check_state_inputs(tmp_path, capsys):
    p = tmp_path / "w.json"
    io.save(DualityState.of(PHI2 - 0.6 * np.eye(4), 2, 2, "J"), p)
    assert main(["check", str(p), "popt", "--restarts", "8", "--seed", "3"]) == 1
    rep = _stdout_json(capsys)["report"]
    assert rep["witness_value"] <= -0.6 + 1e-6 and rep["restarts_used"] == 8
    assert main(["check", str(p), "psd"]) == 1
    assert main(["check", str(p), "hermitian"]) == 0
    assert main(["check", str(p), "ppt"]) == 2  # not PSD
    capsys.readouterr()
    q = tmp_path / "j.json"
    io.save(j_forward(random_map("tp-cp", 2, 2, 1)), q)
    assert main(["check", str(q), "trace-preserving"]) == 0
    assert main(["check", str(q), "cp"]) == 0
    capsys.readouterr()


def test_check_tolerance_flag(tmp_path, capsys):
    p = tmp_path / "d.json"
    io.save(DualityState.of(np.diag([1.0, 1.0, 1.0, -1e-4]), 2, 2, "C"), p)
    assert main(["check", str(p), "psd"]) == 1
    assert main(["check", str(p), "psd", "--tol", "1e-3"]) == 0
    capsys.readouterr()


def test_check_unknown_predicate(files):
    with pytest.raises(SystemExit) as e:
        main(["check", str(files["id"]), "separable"])
    assert e.value.code == 2


# --- generate ---------------------------------------------------------------


def test_generate_and_check(tmp_path, capsys):
    g1, g2 = tmp_path / "g1.json", tmp_path / "g2.json"
    assert main(["generate", "cp", "2", "2", "42", "-o", str(g1)]) == 0
    assert main(["generate", "cp", "2", "2", "42", "-o", str(g2)]) == 0
    assert g1.read_bytes() == g2.read_bytes()
    assert main(["check", str(g1), "cp"]) == 0
    d = tmp_path / "d.json"
    assert main(["generate", "decomposable", "2", "2", "7", "-o", str(d)]) == 0
    assert json.loads(d.read_text())["repr"] == "transfer"
    assert main(["check", str(d), "popt"]) == 0
    capsys.readouterr()


def test_generate_every_class_is_deterministic(tmp_path):
    for cls in ("arbitrary", "herm-preserving", "cp", "co-cp", "decomposable", "tp-cp"):
        a, b = tmp_path / f"{cls}a.json", tmp_path / f"{cls}b.json"
        main(["generate", cls, "2", "3", "5", "-o", str(a)])
        main(["generate", cls, "2", "3", "5", "-o", str(b)])
        assert a.read_bytes() == b.read_bytes()


def test_generate_seed_from_environment(tmp_path, monkeypatch):
    a, b, c = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    monkeypatch.setenv("CHOILAB_SEED", "42")
    assert main(["generate", "cp", "2", "2", "-o", str(a)]) == 0
    main(["generate", "cp", "2", "2", "42", "-o", str(b)])
    monkeypatch.setenv("CHOILAB_SEED", "43")
    main(["generate", "cp", "2", "2", "-o", str(c)])
    assert a.read_bytes() == b.read_bytes() != c.read_bytes()
    monkeypatch.setenv("CHOILAB_SEED", "x")
    assert main(["generate", "cp", "2", "2", "-o", str(c)]) == 2


def test_generate_bad_dims(tmp_path):
    assert main(["generate", "cp", "0", "2", "1", "-o", str(tmp_path / "x.json")]) == 3


# --- verify -----------------------------------------------------------------


def test_verify_all(tmp_path, capsys):
    report = tmp_path / "r.json"
    code = main(["verify", "all", "--dims", "2,2", "--trials", "50", "--seed", "42", "--report", str(report)])
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["schema"] == "choilab/report/v1" and doc["ok"]
    assert len(doc["suites"]) == 11
    assert all(s["failed"] == 0 for s in doc["suites"])
    assert _stdout_json(capsys)["ok"]


def test_verify_errors(capsys):
    assert main(["verify", "NoSuchTheorem"]) == 2
    assert main(["verify", "choi", "--trials", "10", "--seed", "42", "--inject-fault"]) == 1
    doc = _stdout_json(capsys)
    assert doc["suites"][0]["failed"] > 0
    with pytest.raises(SystemExit) as e:
        main(["verify", "choi", "--dims", "2x2"])
    assert e.value.code == 2


def test_verify_multiple_dims(capsys):
    assert main(["verify", "lemma1_t", "choi", "--dims", "2,2", "--dims", "2,3", "--trials", "5"]) == 0
    doc = _stdout_json(capsys)
    assert doc["dims"] == [[2, 2], [2, 3]]
    assert [s["passed"] for s in doc["suites"]] == [10, 10]


def test_console_entry_point_logs_to_stderr(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "choilab.cli", "-v", "verify", "choi", "--trials", "3"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    json.loads(out.stdout)  # stdout holds exactly one JSON document
    assert "Choi" in out.stderr
