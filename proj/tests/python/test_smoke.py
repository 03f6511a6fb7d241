import json
import math

import numpy as np
import pytest

import epclass


def test_builtin_models_round_trip():
    assert set(epclass.builtin_model_names()) >= {"ssh", "three-band", "sqrt-ep"}
    ssh = epclass.load_model("ssh")
    assert ssh.orbitals == 2
    again = epclass.parse_model(ssh.serialize())
    assert again.hash() == ssh.hash()


def test_bloch_and_eig():
    ssh = epclass.load_model("ssh")
    h = epclass.bloch(ssh, {"t": 0.5, "theta": 0.4, "k": 0.3})
    assert h.shape == (2, 2)
    values, right, left = epclass.eig(h)
    assert np.allclose(h @ right, right * values)
    assert np.allclose(left.conj().T @ right, np.eye(2))


def test_classify_ssh_regions():
    ssh = epclass.load_model("ssh")
    labels = [epclass.classify(ssh, {"t": t, "theta": 0.4})["signature"] for t in (0.5, 1.0, 2.0)]
    assert labels == ["1^2", "b2^1", "b1^2"]


def test_double_encircling():
    r = epclass.classify_circle(epclass.load_model("sqrt-ep"), turns=2)
    assert r["permutation"] == [0, 1]
    for ph in r["phases"]:
        assert abs(abs(math.remainder(ph["gamma"].real, 2 * math.pi)) - math.pi) < 1e-3


def test_enumerate_and_signatures():
    assert len(epclass.enumerate_classes(2)) == 3
    assert len(epclass.enumerate_classes(3)) == 5
    assert epclass.normalize_signature("b2^1 1^1") == "1^1 b2^1"
    with pytest.raises(epclass.EpclassError):
        epclass.normalize_signature("b1^1")


def test_locate_eps():
    eps = epclass.locate_eps(epclass.load_model("ssh"), "t=0:3,k=0:6.2832", {"theta": 0.4})
    ts = sorted(e["coord1"] for e in eps)
    assert ts == pytest.approx([math.exp(-0.4), math.exp(0.4)], abs=1e-6)


def test_obc_edge_states():
    r = epclass.obc_report(epclass.load_model("ssh"), 40, {"t": 1.6, "theta": 0.4})
    assert r["midgap"] == [39, 40]


def test_phase_diagram_grid_shape():
    grid = epclass.phase_diagram(epclass.load_model("ssh"), "t=0:3:6", "theta=-1:1:3", samples=64)
    assert len(grid) == 3 and all(len(row) == 6 for row in grid)


def test_run_cli():
    code, out, _ = epclass.run_cli(["enumerate", "--n", "3"])
    assert code == 0
    assert len(json.loads(out)["classes"]) == 5
    code, _, err = epclass.run_cli(["classify", "--model", "nope"])
    assert code == 1 and err
