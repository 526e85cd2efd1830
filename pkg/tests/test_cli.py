"""Exit codes, file schemas, and determinism of the command-line layer."""

import json
import subprocess

import numpy as np
import pytest

from abscompat.canonical import is_strict_projection
from abscompat.cli import run
from abscompat.compat import is_abs_compatible
from abscompat.io import load_matrix, save_matrix

FIX_A = np.array([[0.25, 0.25], [0.25, 0.75]], dtype=complex)
FIX_B = np.array([[0.25, -0.25], [-0.25, 0.75]], dtype=complex)


@pytest.fixture
def fixture_files(tmp_path):
    pa = tmp_path / "a.json"
    pb = tmp_path / "b.json"
    save_matrix(pa, FIX_A)
    save_matrix(pb, FIX_B)
    return str(pa), str(pb)


def test_check_fixture(fixture_files, tmp_path, capsys):
    pa, pb = fixture_files
    assert run(["check", pa, pb]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["compatible"] is True
    assert report["residual"] <= 1e-12


def test_check_incompatible(tmp_path):
    p = tmp_path / "half.json"
    save_matrix(p, 0.5 * np.eye(2, dtype=complex))
    assert run(["check", str(p), str(p)]) == 2


def test_check_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "entries": "nope"}')
    assert run(["check", str(bad), str(bad)]) == 1
    err = capsys.readouterr().err
    assert "ParseError" in err


def test_check_missing_args():
    assert run(["check"]) == 1


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    assert "check" in capsys.readouterr().out


def test_decompose_fixture(fixture_files, tmp_path):
    pa, pb = fixture_files
    out = tmp_path / "cf.json"
    blocks = tmp_path / "blocks.json"
    assert run(["decompose", pa, pb, "--out", str(out), "--blocks", str(blocks)]) == 0
    cf = json.loads(out.read_text())
    assert cf["m"] == 1
    assert abs(cf["x0"][0] - 0.5) <= 1e-12
    assert cf["residual"] <= 1e-7
    fb = json.loads(blocks.read_text())
    assert set(fb["projections"]) == {"unit_a", "unit_b", "strict", "null_a", "null_b"}


def test_decompose_not_compatible(tmp_path):
    p = tmp_path / "e.json"
    save_matrix(p, np.diag([0.4, 0.6]).astype(complex))
    assert run(["decompose", str(p), str(p)]) == 2


def test_decompose_not_strict(tmp_path):
    p = tmp_path / "p.json"
    q = tmp_path / "q.json"
    save_matrix(p, np.diag([1.0, 0.0]).astype(complex))
    save_matrix(q, np.diag([0.0, 1.0]).astype(complex))
    assert run(["decompose", str(p), str(q)]) == 3


def test_gen_pair_then_check(tmp_path, capsys):
    prefix = str(tmp_path / "t")
    assert run(["gen", "pair", "--n", "4", "--seed", "1", "--out", prefix]) == 0
    meta = json.loads(capsys.readouterr().out)
    assert meta["seed"] == 1
    a = load_matrix(prefix + "_a.json")
    b = load_matrix(prefix + "_b.json")
    assert is_abs_compatible(a, b).compatible
    assert run(["check", prefix + "_a.json", prefix + "_b.json"]) == 0


def test_gen_strict_projection(tmp_path, capsys):
    prefix = str(tmp_path / "p")
    assert run(["gen", "projection", "--strict", "--sites", "3", "--out", prefix]) == 0
    capsys.readouterr()
    p = load_matrix(prefix + "_p.json")
    assert p.shape == (6, 6)
    assert is_strict_projection(p)


def test_gen_odd_dimension(tmp_path, capsys):
    assert run(["gen", "pair", "--n", "3", "--out", str(tmp_path / "x")]) == 1
    assert "OddDimension" in capsys.readouterr().err


def test_gen_commuting_and_unitary(tmp_path, capsys):
    prefix = str(tmp_path / "c")
    assert run(["gen", "commuting", "--n", "3", "--seed", "4", "--out", prefix]) == 0
    assert run(["gen", "unitary", "--n", "4", "--seed", "4", "--out", prefix]) == 0
    capsys.readouterr()
    u = load_matrix(prefix + "_u.json")
    assert np.allclose(u.conj().T @ u, np.eye(4), atol=1e-12)


def test_geometry_fixture_flags(tmp_path):
    out = tmp_path / "geo.json"
    code = run([
        "geometry", "--pivot", "0,0,0", "--target", "0.5,0.5,0",
        "--index", "0.5", "--out", str(out),
    ])
    assert code == 0
    blob = json.loads(out.read_text())
    assert max(blob["residuals"].values()) <= 1e-12
    assert blob["pivotal"]["center"] == [0.25, 0.0, 0.0]


def test_geometry_from_files(fixture_files, tmp_path):
    pa, pb = fixture_files
    out = tmp_path / "geo.json"
    assert run(["geometry", "--a", pa, "--b", pb, "--out", str(out)]) == 0
    blob = json.loads(out.read_text())
    assert abs(blob["pivotal"]["index"] - 0.5) <= 1e-9


def test_geometry_csv_samples(tmp_path):
    out = tmp_path / "geo.csv"
    code = run([
        "geometry", "--pivot", "0,0,0", "--target", "0.5,0.5,0", "--index", "0.5",
        "--sample", "64", "--format", "csv", "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "name,x,y,z"
    samples = [ln for ln in lines if ln.startswith("sample_")]
    assert len(samples) == 64


def test_geometry_not_strict(tmp_path):
    p = tmp_path / "p.json"
    save_matrix(p, np.diag([1.0, 0.0]).astype(complex))
    assert run(["geometry", "--a", str(p), "--b", str(p)]) == 3


def test_geometry_missing_spec():
    assert run(["geometry", "--pivot", "0,0,0"]) == 1


def test_fuzz_suites_pass(tmp_path):
    for suite in ("compat", "canonical", "m2", "geometry", "equivalences"):
        out = tmp_path / (suite + ".json")
        assert run(["fuzz", suite, "--trials", "6", "--seed", "5", "--out", str(out)]) == 0
        blob = json.loads(out.read_text())
        assert blob["passed"] == 6 and blob["failed"] == 0
        assert blob["worst_residual"]


def test_fuzz_unknown_suite(capsys):
    assert run(["fuzz", "bogus"]) == 1
    assert "UnknownSuite" in capsys.readouterr().err


def test_fuzz_deterministic_bytes(tmp_path):
    o1, o2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run(["fuzz", "m2", "--trials", "10", "--seed", "77", "--out", str(o1)])
    run(["fuzz", "m2", "--trials", "10", "--seed", "77", "--out", str(o2)])
    assert o1.read_bytes() == o2.read_bytes()


def test_fuzz_failure_bundle(tmp_path):
    out = tmp_path / "r.json"
    bundle = tmp_path / "boom.fail.json"
    code = run([
        "fuzz", "compat", "--trials", "3", "--seed", "9",
        "--tol-compat", "1e-17", "--out", str(out), "--fail-out", str(bundle),
    ])
    assert code == 4
    blob = json.loads(bundle.read_text())
    assert blob["suite"] == "compat"
    # the bundle replays: the recorded instance reproduces the violation
    from abscompat.config import DEFAULT_TOL
    from abscompat.io import matrix_from_json

    a = matrix_from_json(blob["matrices"]["a"])
    b = matrix_from_json(blob["matrices"]["b"])
    rep = is_abs_compatible(a, b, DEFAULT_TOL.override(compat=1e-17))
    assert not rep.compatible


def test_console_script_help():
    proc = subprocess.run(["abscompat", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "check" in proc.stdout
