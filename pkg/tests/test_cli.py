from __future__ import annotations

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from qitk import cli
from qitk import entropy as ent
from qitk import qubits as qb
from qitk import teleport as tp
from qitk.bell import paradoxes as px
from qitk.tensor import to_json


def _json(capsys, argv):
    code = cli.main(["--json", *argv])
    out = capsys.readouterr()
    text = out.out if code == 0 else out.err
    return code, json.loads(text)


def test_entropy_bb84(capsys):
    code, body = _json(capsys, ["entropy", "bb84", "--eps", "0.25"])
    assert code == 0 and body["status"] == "ok"
    assert abs(body["payload"]["chi"] - ent.binary_entropy(0.25)) < 1e-10


def test_bell_detection(capsys):
    code, body = _json(capsys, ["bell", "detection", "--eta", "0.9"])
    expected = 0.81 * 2 * math.sqrt(2) + 0.01 * 2
    assert code == 0 and abs(body["payload"]["observed"] - expected) < 1e-10
    assert abs(body["payload"]["threshold"] - 2 / (math.sqrt(2) + 1)) < 1e-9


def test_bell_table_and_membership(capsys):
    code, body = _json(capsys, ["bell", "table", "--box", "pr"])
    assert code == 0 and body["payload"]["t_ch"] == 0.5
    table = json.dumps(body["payload"]["table"])
    code, body = _json(capsys, ["bell", "membership", "--table", table])
    assert code == 0 and body["payload"]["is_local"] is False
    assert abs(body["payload"]["violation"] - 0.5) < 1e-9
    code, body = _json(capsys, ["bell", "table", "--box", "d:3,4"])
    assert body["payload"]["t_ch"] == 0


def test_membership_from_file(tmp_path, capsys):
    path = tmp_path / "uniform.json"
    path.write_text(json.dumps({"mA": [0.5, 0.5], "mB": [0.5, 0.5], "j": [[0.25, 0.25], [0.25, 0.25]]}))
    code, body = _json(capsys, ["bell", "membership", "--table", str(path)])
    assert code == 0 and body["payload"]["is_local"] is True
    assert abs(sum(body["payload"]["weights"]) - 1) < 1e-9


def test_bell_chsh(capsys):
    code, body = _json(capsys, ["bell", "chsh", "--state", "psi-minus"])
    assert code == 0 and abs(body["payload"]["chsh"] + 2 * math.sqrt(2)) < 1e-10
    assert body["payload"]["violates"] is True
    settings = json.dumps([[0, 0, 1], [0, 0, 1], [0, 0, 1], [0, 0, 1]])
    code, body = _json(capsys, ["bell", "chsh", "--state", "psi-minus", "--settings", settings])
    assert abs(body["payload"]["chsh"] + 2) < 1e-10


def test_state_command(capsys):
    code, body = _json(capsys, ["state", "werner:0.5"])
    assert code == 0 and body["payload"]["dims"] == [2, 2]
    assert np.allclose(body["payload"]["bloch"], 0)
    code, body = _json(capsys, ["state", json.dumps(to_json(qb.PLUS))])
    assert code == 0 and np.allclose(body["payload"]["bloch"][0], [1, 0, 0])


def test_clone_commands(capsys):
    code, body = _json(capsys, ["clone", "bh", "--theta", "1.0", "--phi", "0.3"])
    assert code == 0
    assert abs(body["payload"]["fidelity_a"] - 5 / 6) < 1e-10
    assert abs(body["payload"]["not_fidelity"] - 2 / 3) < 1e-10
    code, body = _json(capsys, ["clone", "trivial"])
    assert body["payload"] == {"random-new-qubit": 0.75, "measure-and-reprepare": pytest.approx(2 / 3)}


def test_channel_and_repeater(capsys):
    code, body = _json(capsys, ["channel", "collide", "--p", "0.3", "--phi", "0.5", "--n", "300"])
    assert code == 0 and body["payload"]["reservoir_distance"] < 1e-10
    code, body = _json(capsys, ["repeater", "--t", "0.01"])
    assert body["payload"]["one_repeater"] == 15


def test_discriminate_commands(capsys):
    a, b = qb.spin_state(0.6, 0), qb.spin_state(-0.6, 0)
    states = json.dumps([to_json(a), to_json(b)])
    code, body = _json(capsys, ["discriminate", "helstrom", "--states", states])
    assert code == 0 and abs(body["payload"]["p_error"] - 0.5 * (1 - math.sin(0.6))) < 1e-10
    code, body = _json(capsys, ["discriminate", "usd", "--alpha", "0.4"])
    assert abs(body["payload"]["p_success"] - (1 - math.cos(0.8))) < 1e-10
    code, body = _json(capsys, ["discriminate", "timebin", "--alpha-amp", "1", "--eta", "0.5"])
    assert abs(body["payload"]["p_conclusive"] - (1 - math.exp(-0.5))) < 1e-8
    code, body = _json(capsys, ["discriminate", "chernoff", "--states", json.dumps(["psi-minus", "phi-plus"])])
    assert body["payload"]["xi"] == "inf"
    code, body = _json(capsys, ["discriminate", "pgm", "--states", states])
    assert code == 0


def test_payload_matches_library(capsys):
    code, body = _json(capsys, ["--seed", "3", "teleport", "--theta", "0.7", "--runs", "50"])
    rng = np.random.default_rng(3)
    psi = qb.spin_state(0.7, 0.0)
    hist = {k: 0 for k in tp.OUTCOMES}
    for _ in range(50):
        hist[tp.teleport_run(psi, rng).outcome] += 1
    assert body["payload"]["histogram"] == hist
    assert body["payload"]["min_fidelity"] == pytest.approx(1, abs=1e-10)
    code, body = _json(capsys, ["bell", "detection", "--eta", "0.85"])
    assert body["payload"]["observed"] == pytest.approx(px.detection_loophole(0.85).observed, abs=1e-11)


def test_same_seed_gives_identical_output(capsys):
    argv = ["--json", "--seed", "11", "clone", "trivial", "--samples", "2000"]
    cli.main(argv)
    first = capsys.readouterr().out
    cli.main(argv)
    assert capsys.readouterr().out == first


def test_exit_codes(capsys):
    assert cli.main(["frobnicate"]) == 2
    assert cli.main(["bell", "table", "--box", "xx"]) == 2
    assert cli.main(["bell", "membership"]) == 2
    assert cli.main(["bell", "membership", "--table", '{"mA": [0.5']) == 2
    assert cli.main(["bell", "membership", "--table", '{"x": 1}']) == 2
    assert cli.main(["repeater", "--t", "0"]) == 1
    assert cli.main(["bell", "membership", "--table", "[0.5,0.5,0.5,0.5,0.9,0.5,0.5,0.5]"]) == 1
    assert cli.main(["entropy", "vn", "--state", "[1, 1]"]) == 2
    not_a_state = json.dumps(to_json(qb.sigma_x))
    assert cli.main(["entropy", "vn", "--state", not_a_state]) == 1
    capsys.readouterr()


def test_errors_are_reported_as_json(capsys):
    code, body = _json(capsys, ["repeater", "--t", "2"])
    assert code == 1 and body["status"] == "error" and body["payload"]["error"]


def test_human_output(capsys):
    assert cli.main(["entropy", "vn", "--state", "werner:0"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("S = ") and out.strip().endswith("bits")
    assert abs(float(out.split()[2]) - 2) < 1e-9


def test_verify_command(capsys):
    code, body = _json(capsys, ["verify-paper"])
    assert code == 0 and body["payload"]["all_pass"] is True
    assert all(row["pass"] for row in body["payload"]["checks"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qitk", "--json", "repeater", "--t", "0.25"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["direct"] == 4
