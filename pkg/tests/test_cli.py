import json
import subprocess
import sys

import numpy as np
import pytest

from modalssc.cli import (
    load_network_file,
    main,
    render_dot,
    spec_from_json,
    spec_to_json,
)

from helpers import FIXTURES, random_network_spec

RING = str(FIXTURES / "ring.json")
PLATOON = str(FIXTURES / "platoon.json")


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_json_round_trip_fixtures():
    for path in (RING, PLATOON):
        spec = load_network_file(path)
        again = spec_from_json(spec_to_json(spec), where=path)
        assert again == spec


def test_json_round_trip_random_specs():
    rng = np.random.default_rng(811)
    for _ in range(40):
        spec = random_network_spec(rng)
        again = spec_from_json(spec_to_json(spec), where="<mem>")
        assert again == spec


def write_doc(tmp_path, doc, name="net.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if isinstance(doc, dict) else doc)
    return str(p)


def minimal_doc():
    return {
        "subsystems": [
            {"id": 1, "pattern": ["?"]},
            {"id": 2, "pattern": ["*"]},
        ],
        "couplings": [{"from": 1, "to": 2, "pattern": ["*"]}],
        "delta": {"kind": "all"},
        "control": [1],
    }


@pytest.mark.parametrize(
    "mangle, needle",
    [
        (lambda d: d["subsystems"].pop(), "subsystem id"),
        (lambda d: d["subsystems"][0].update(id=5), "ids must be exactly"),
        (lambda d: d["couplings"].append(dict(d["couplings"][0])), "given twice"),
        (lambda d: d["couplings"][0].update(pattern=["**"]), "pattern shape"),
        (lambda d: d.update(extra=1), "unknown key"),
        (lambda d: d["subsystems"][0].update(spectral_knowledge="magic"), "spectral knowledge"),
        (lambda d: d.update(control=[9]), "control"),
        (lambda d: d["couplings"][0].update({"from": 1, "to": 1}), "coupling"),
        (lambda d: d.update(delta={"kind": "interval", "a": 2.0, "b": -2.0}), "interval"),
        (lambda d: d["subsystems"][0].pop("pattern") and None, "pattern"),
    ],
)
def test_parse_errors_exit_2(tmp_path, capsys, mangle, needle):
    doc = minimal_doc()
    mangle(doc)
    path = write_doc(tmp_path, doc)
    code, _, err = run_cli(capsys, "check-zfs", path)
    assert code == 2
    assert needle in err


def test_bad_json_syntax_reports_line(tmp_path, capsys):
    path = write_doc(tmp_path, '{"subsystems": [,]}')
    code, _, err = run_cli(capsys, "build", path)
    assert code == 2
    assert "line 1" in err


def test_missing_file_exits_2(capsys):
    code, _, err = run_cli(capsys, "build", "/does/not/exist.json")
    assert code == 2
    assert "exist.json" in err


def test_bogus_backend_env_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("MODAL_SSC_BACKEND", "turbo")
    code, _, err = run_cli(capsys, "check-zfs", str(RING), "--set", "1")
    assert code == 2
    assert "MODAL_SSC_BACKEND" in err
    assert "turbo" in err
    assert "Traceback" not in err


def test_bogus_search_cap_env_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("MODAL_SSC_SEARCH_CAP", "banana")
    code, _, err = run_cli(capsys, "min-zfs", str(RING))
    assert code == 2
    assert "MODAL_SSC_SEARCH_CAP" in err
    assert "banana" in err
    assert "Traceback" not in err


def test_dot_output_is_stable_and_golden(capsys):
    spec = load_network_file(RING)
    assert render_dot(spec, "network") == render_dot(spec, "network")
    code, out, _ = run_cli(capsys, "build", RING)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "digraph network {"
    assert "  rankdir=LR;" in lines
    assert '  1 [style=filled, fillcolor=black, fontcolor=white];' in lines
    assert "  1 -> 2 [style=dashed];" in lines
    assert "  1 -> 1;" in lines
    assert out.endswith("}\n")


def test_dot_global_level_uses_state_labels(capsys):
    code, out, _ = run_cli(capsys, "build", RING, "--level", "global")
    assert code == 0
    assert out.splitlines()[0] == "digraph global {"
    assert 'label="1^1"' in out
    assert 'label="6^2"' in out


def test_dot_file_argument(tmp_path, capsys):
    target = tmp_path / "ring.dot"
    code, out, _ = run_cli(capsys, "build", RING, "--dot", str(target))
    assert code == 0
    assert target.read_text() == out


def test_check_zfs_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "check-zfs", RING, "--set", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["is_zfs"] is True
    assert doc["set"] == [1]
    assert doc["derived_set"] == [1, 2, 3, 4, 5, 6]
    assert doc["vertex_weight"] == 2
    assert doc["chronicle"] == [[6, 6], [5, 5], [4, 4], [3, 3], [2, 2]]
    code, out, _ = run_cli(capsys, "check-zfs", RING, "--set", "")
    assert code == 1
    assert json.loads(out)["derived_set"] == []


def test_check_zfs_defaults_to_control(capsys):
    code, out, _ = run_cli(capsys, "check-zfs", PLATOON)
    assert code == 0
    assert json.loads(out)["set"] == [1]


def test_min_zfs_output(capsys):
    code, out, _ = run_cli(capsys, "min-zfs", RING)
    assert code == 0
    assert json.loads(out) == {"set": [1], "weight": 2}


def test_min_zfs_cap_exits_3(tmp_path, capsys):
    doc = {
        "subsystems": [{"id": k, "pattern": ["?"]} for k in range(1, 22)],
        "couplings": [],
        "delta": {"kind": "all"},
        "control": [],
    }
    path = write_doc(tmp_path, doc)
    code, _, err = run_cli(capsys, "min-zfs", path)
    assert code == 3
    assert "cap" in err.lower() or "limit" in err.lower()


def test_ssc_affirmative(capsys):
    code, out, _ = run_cli(capsys, "ssc", RING)
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "sufficient"
    assert doc["witness"] is None
    assert doc["zfs"]["is_zfs"] is True


def test_ssc_negative_embeds_witness(tmp_path, capsys):
    doc = {
        "subsystems": [
            {"id": 1, "pattern": ["0"]},
            {"id": 2, "pattern": ["*"]},
        ],
        "couplings": [{"from": 1, "to": 2, "pattern": ["*"]}],
        "delta": {"kind": "singleton", "value": 0.0},
        "control": [2],
    }
    path = write_doc(tmp_path, doc)
    code, out, _ = run_cli(capsys, "ssc", path)
    assert code == 1
    got = json.loads(out)
    assert got["verdict"] == "iff_fails"
    w = got["witness"]
    assert w["mu"] == 0.0
    assert w["nu"] == [1.0, 0.0]
    A = np.array(w["A"])
    assert np.allclose(np.array(w["nu"]) @ A, 0.0)


def test_verify_pass_and_fail(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "verify", RING, "--trials", "50")
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True and doc["trials"] == 50 and doc["violations"] == []
    bad = {
        "subsystems": [{"id": 1, "pattern": ["0"]}],
        "couplings": [],
        "delta": {"kind": "singleton", "value": 0.0},
        "control": [],
    }
    path = write_doc(tmp_path, bad)
    code, out, _ = run_cli(capsys, "verify", path, "--trials", "5")
    assert code == 1
    doc = json.loads(out)
    assert doc["pass"] is False
    assert len(doc["violations"]) == 5
    v = doc["violations"][0]
    assert set(v) == {"trial", "eigenvalue", "sigma_min"}


def test_rank_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "rank", PLATOON, "--from", "1", "--to", "2")
    assert code == 1
    assert json.loads(out)["full_row_rank"] is False
    code, out, _ = run_cli(capsys, "rank", PLATOON, "--from", "1", "--to", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["full_row_rank"] is True
    assert len(doc["chronicle"]) == 2


def test_rank_node_block_and_missing_coupling(capsys):
    # --from equal to --to addresses the node's own pattern
    code, out, _ = run_cli(capsys, "rank", RING, "--from", "2", "--to", "2")
    assert code == 0
    # absent couplings behave as all-zero blocks
    code, out, _ = run_cli(capsys, "rank", RING, "--from", "1", "--to", "4")
    assert code == 1
    code, _, err = run_cli(capsys, "rank", RING, "--from", "7", "--to", "1")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "modalssc", "min-zfs", RING],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"set": [1], "weight": 2}
