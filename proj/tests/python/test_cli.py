"""Black-box tests for the command line tool, driven through subprocess."""

import json
import math
import os
import subprocess

import pytest

CLI = os.environ["OPCONVEX_CLI"]

S = 1.0 / math.sqrt(2.0)


def run_cli(*args, env=None):
    merged = dict(os.environ)
    if env:
        merged.update(env)
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=merged)


def matrix(rows, cols, entries):
    return {"rows": rows, "cols": cols, "data": [[re, im] for re, im in entries]}


E11 = matrix(2, 2, [(1, 0), (0, 0), (0, 0), (0, 0)])
E12 = matrix(2, 2, [(0, 0), (1, 0), (0, 0), (0, 0)])
E21 = matrix(2, 2, [(0, 0), (0, 0), (1, 0), (0, 0)])
IDENTITY2 = matrix(2, 2, [(1, 0), (0, 0), (0, 0), (1, 0)])
BIT_FLIP = {
    "dim": 2,
    "kraus": [
        matrix(2, 2, [(S, 0), (0, 0), (0, 0), (S, 0)]),
        matrix(2, 2, [(0, 0), (S, 0), (S, 0), (0, 0)]),
    ],
}


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def row_partition(tmp_path):
    return write_json(tmp_path / "row_partition.json", [E11, E21])


@pytest.fixture
def compression_channel(tmp_path):
    return write_json(tmp_path / "compression.json", {"dim": 2, "kraus": [E11, E21]})


def test_verify_fop_passes(row_partition):
    result = run_cli("verify-fop", row_partition)
    assert result.returncode == 0

    as_json = run_cli("--json", "verify-fop", row_partition)
    report = json.loads(as_json.stdout)
    assert report["kind"] == "fop"
    assert report["passed"] is True
    assert report["defect"] == 0.0


def test_verify_lindblad_fails_with_exact_defect(row_partition):
    result = run_cli("--json", "verify-lindblad", row_partition)
    assert result.returncode == 1
    report = json.loads(result.stdout)
    assert report["passed"] is False
    assert report["defect"] == pytest.approx(math.sqrt(2.0), abs=1e-15)


def test_verify_cs_flags_non_hermitian_members(row_partition):
    result = run_cli("--json", "verify-cs", row_partition)
    assert result.returncode == 1
    report = json.loads(result.stdout)
    assert report["member_violations"]


def test_malformed_json_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    result = run_cli("verify-fop", str(bad))
    assert result.returncode == 2
    assert "error:" in result.stderr


def test_missing_file_exits_2(tmp_path):
    result = run_cli("classify", str(tmp_path / "nowhere.json"))
    assert result.returncode == 2


def test_unknown_subcommand_exits_2():
    result = run_cli("frobnicate")
    assert result.returncode == 2


def test_unknown_repro_scenario_exits_2():
    result = run_cli("repro", "example-9.9")
    assert result.returncode == 2


@pytest.mark.parametrize(
    "scenario", ["example-3.3", "example-3.6", "theorem-3.7", "remark-3.5"]
)
def test_repro_scenarios_pass(scenario):
    result = run_cli("repro", scenario, "--seed", "7")
    assert result.returncode == 0
    assert "overall: PASS" in result.stdout

    as_json = run_cli("--json", "repro", scenario, "--seed", "7")
    report = json.loads(as_json.stdout)
    assert report["scenario"] == scenario
    assert report["overall"] is True
    assert all(step["passed"] for step in report["steps"])


def test_classify_compression_channel(compression_channel):
    result = run_cli("--json", "classify", compression_channel)
    assert result.returncode == 0
    flags = json.loads(result.stdout)
    assert flags["cp"] is True
    assert flags["unital"] is True
    assert flags["trace_preserving"] is False
    assert flags["size"] == 2
    assert flags["trace_defect"] == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_choi_kraus_round_trip_is_bit_exact(tmp_path, compression_channel):
    first = run_cli("--json", "choi", compression_channel)
    assert first.returncode == 0

    choi_file = tmp_path / "choi.json"
    choi_file.write_text(first.stdout)
    back = run_cli("--json", "kraus", str(choi_file))
    assert back.returncode == 0

    channel_file = tmp_path / "recovered_channel.json"
    channel_file.write_text(back.stdout)
    second = run_cli("--json", "choi", str(channel_file))
    assert second.returncode == 0
    assert second.stdout == first.stdout


def test_make_builders():
    result = run_cli("make", "e", "2", "1", "1")
    assert result.returncode == 0
    assert json.loads(result.stdout) == E11

    pauli = run_cli("make", "pauli", "x")
    assert pauli.returncode == 0
    assert json.loads(pauli.stdout) == matrix(2, 2, [(0, 0), (1, 0), (1, 0), (0, 0)])

    ident = run_cli("make", "id", "2")
    assert ident.returncode == 0
    assert json.loads(ident.stdout) == IDENTITY2

    assert run_cli("make", "pauli", "q").returncode == 2
    assert run_cli("make", "e", "2", "3", "1").returncode == 2


def test_extreme_check_exit_codes(tmp_path, compression_channel):
    assert run_cli("extreme-check", compression_channel).returncode == 0

    mixture = write_json(tmp_path / "bit_flip.json", BIT_FLIP)
    result = run_cli("extreme-check", mixture)
    assert result.returncode == 1
    assert "not-usual-extreme" in result.stdout


def test_refute_opextreme_finds_witness(compression_channel):
    result = run_cli("refute-opextreme", compression_channel, "--seed", "11")
    assert result.returncode == 0
    assert "REFUTED" in result.stdout

    as_json = run_cli(
        "--json", "refute-opextreme", compression_channel, "--seed", "11"
    )
    assert as_json.returncode == 0
    payload = json.loads(as_json.stdout)
    assert payload["found"] is True
    assert payload["verdict"]["valid"] is True
    assert payload["verdict"]["trivializing"] is False


def test_refute_opextreme_automorphism_exhausts_budget(tmp_path):
    channel = write_json(
        tmp_path / "identity_channel.json", {"dim": 2, "kraus": [IDENTITY2]}
    )
    result = run_cli("refute-opextreme", channel, "--budget", "40", "--seed", "3")
    assert result.returncode == 1
    assert "NO WITNESS FOUND" in result.stdout


def test_ks_gap(tmp_path, compression_channel):
    x_file = write_json(tmp_path / "x.json", E21)
    result = run_cli("--json", "ks-gap", compression_channel, x_file)
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["passed"] is True
    assert payload["gap"] >= -1e-10


def test_tolerance_env_override(tmp_path):
    scaled = matrix(2, 2, [(1 + 1e-7, 0), (0, 0), (0, 0), (1 + 1e-7, 0)])
    partition = write_json(tmp_path / "near_unitary.json", [scaled])
    strict = run_cli("verify-fop", partition)
    assert strict.returncode == 1
    loose = run_cli("verify-fop", partition, env={"OPCONVEX_TOL": "1e-3"})
    assert loose.returncode == 0
