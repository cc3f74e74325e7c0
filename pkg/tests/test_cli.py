"""Command-line interface: exit codes, formats, determinism, replay."""

import json
import os
import subprocess
import sys

import pytest

from matsemi.cli import main
from matsemi.maps import determinant_map, identity_map, power_map
from matsemi.rings import make_matrix_ring, make_zmod


@pytest.fixture(scope="module")
def map_files(tmp_path_factory):
    d = tmp_path_factory.mktemp("maps")
    m = make_matrix_ring(make_zmod(2), 2)
    files = {}
    for name, phi in [
        ("det", determinant_map(m)),
        ("identity", identity_map(m.ring)),
        ("cube", power_map(make_zmod(4), 3)),
        ("id_z4", identity_map(make_zmod(4))),
    ]:
        p = d / f"{name}.json"
        p.write_text(json.dumps(phi.to_json()))
        files[name] = str(p)
    bad = d / "bad.json"
    bad.write_text("{not json")
    files["bad"] = str(bad)
    return files


def run_cli(*argv, capsys=None):
    """Invoke main() in-process and capture stdout."""
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def test_ring_info_json():
    code, out = run_cli("ring", "info", "zmod:4")
    assert code == 0
    doc = json.loads(out)
    assert doc["size"] == 4
    assert doc["units"] == 2
    assert doc["valid"] is True


def test_ring_info_matrix():
    code, out = run_cli("ring", "info", "mat:2:zmod:2")
    assert code == 0
    doc = json.loads(out)
    assert doc["size"] == 16 and doc["units"] == 6
    assert doc["matrix"]["base"] == "zmod:2"


def test_ring_info_gauss():
    code, out = run_cli("ring", "info", "gauss:3")
    assert code == 0
    doc = json.loads(out)
    assert doc["size"] == 9 and doc["has_i"] is True


def test_ring_info_parse_error_exit2():
    code, _ = run_cli("ring", "info", "zmod:zero")
    assert code == 2


def test_ring_info_size_cap_exit2():
    code, _ = run_cli("ring", "info", "mat:2:zmod:40", "--size-cap", "100")
    assert code == 2


def test_ring_info_formats():
    for fmt in ("json", "csv", "text"):
        code, out = run_cli("ring", "info", "zmod:4", "--format", fmt)
        assert code == 0 and out


def test_map_check_det_fails_corner(map_files):
    code, out = run_cli("map", "check", map_files["det"], "--mult", "--corner")
    assert code == 1
    doc = json.loads(out)
    preds = {c["predicate"]: c["pass"] for c in doc["checks"]}
    assert preds["multiplicative"] is True
    assert preds["corner_relation"] is False


def test_map_check_identity_passes(map_files):
    code, out = run_cli("map", "check", map_files["identity"],
                        "--mult", "--add", "--corner")
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_map_check_malformed_exit2(map_files):
    code, _ = run_cli("map", "check", map_files["bad"], "--mult")
    assert code == 2


def test_map_check_missing_file_exit2():
    code, _ = run_cli("map", "check", "/nonexistent.json", "--mult")
    assert code == 2


def test_map_check_requires_a_check(map_files):
    code, _ = run_cli("map", "check", map_files["det"])
    assert code == 2


def test_map_check_csv(map_files):
    code, out = run_cli("map", "check", map_files["det"],
                        "--mult", "--add", "--format", "csv")
    assert code == 1
    lines = out.strip().splitlines()
    assert lines[0] == "predicate,pass,checked,violations"
    assert len(lines) == 3


def test_verify_prop1():
    code, out = run_cli("verify", "prop1", "--dom", "mat:2:zmod:2",
                        "--cod", "zmod:2")
    assert code == 0
    doc = json.loads(out)
    assert doc["sets_equal"] and doc["enumeration_matches"]
    assert doc["multiplicative"] == 3


def test_verify_witnesses():
    code, out = run_cli("verify", "witnesses", "--ring", "zmod:4")
    assert code == 0
    assert json.loads(out)["all_invertible"] is True


def test_verify_doubling_conflict_exit1(map_files):
    code, out = run_cli("verify", "doubling-gl", "--map", map_files["cube"])
    assert code == 1
    doc = json.loads(out)
    conflicts = doc["trace"]["conflicts"]
    assert conflicts[0][:3] == [1, 1, 1]  # level 1, pair (1, 1)


def test_verify_doubling_pass_and_replay(map_files, tmp_path):
    code, out = run_cli("verify", "doubling-gl", "--map", map_files["id_z4"])
    assert code == 0
    trace = json.loads(out)["trace"]
    tracefile = tmp_path / "trace.json"
    tracefile.write_text(json.dumps(trace))
    code, out = run_cli("verify", "doubling-gl", "--replay", str(tracefile))
    assert code == 0
    assert json.loads(out)["identical"] is True


def test_verify_replay_detects_tampering(map_files, tmp_path):
    code, out = run_cli("verify", "doubling-gl", "--map", map_files["id_z4"])
    trace = json.loads(out)["trace"]
    trace["extension"][0][1] = 3  # forge an extension value
    tracefile = tmp_path / "tampered.json"
    tracefile.write_text(json.dumps(trace))
    code, out = run_cli("verify", "doubling-gl", "--replay", str(tracefile))
    assert code == 1
    assert json.loads(out)["identical"] is False


def test_verify_missing_args_exit2():
    assert run_cli("verify", "prop1")[0] == 2
    assert run_cli("verify", "witnesses")[0] == 2
    assert run_cli("verify", "doubling-gl")[0] == 2


def test_enumerate_ndjson_stream():
    code, out = run_cli("enumerate", "--dom", "zmod:2", "--cod", "zmod:2")
    assert code == 0
    lines = out.strip().splitlines()
    maps = [json.loads(l) for l in lines[:-1]]
    summary = json.loads(lines[-1])["summary"]
    assert [m["img"] for m in maps] == [[0, 0], [0, 1], [1, 1]]
    assert summary["count"] == 3 and summary["exhaustive"] is True


def test_enumerate_limit_lexicographically_least():
    code, out = run_cli("enumerate", "--dom", "zmod:2", "--cod", "zmod:2",
                        "--limit", "1")
    lines = out.strip().splitlines()
    assert json.loads(lines[0])["img"] == [0, 0]


def test_enumerate_filter_flag():
    code, out = run_cli("enumerate", "--dom", "mat:2:zmod:2", "--cod", "zmod:2",
                        "--filter", "corner")
    assert code == 0
    lines = out.strip().splitlines()
    maps = [json.loads(l) for l in lines[:-1]]
    assert len(maps) == 1  # only the zero map survives


def test_enumerate_csv():
    code, out = run_cli("enumerate", "--dom", "zmod:2", "--cod", "zmod:2",
                        "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "index,img"
    assert lines[1] == "0,0 0"


# ---------------------------------------------------------------------------
# Subprocess-level checks: entry point, env var, byte determinism


def _run_subprocess(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "matsemi", *args],
        capture_output=True, env=full_env, timeout=600)


def test_subprocess_exit_codes():
    assert _run_subprocess("ring", "info", "zmod:4").returncode == 0
    assert _run_subprocess("ring", "info", "nonsense:4").returncode == 2
    assert _run_subprocess("totally-bogus-command").returncode == 2


def test_env_size_cap_respected():
    r = _run_subprocess("ring", "info", "mat:2:zmod:4",
                        env={"MATSEMI_SIZE_CAP": "100"})
    assert r.returncode == 2
    assert b"cap" in r.stderr


def test_worker_count_does_not_change_bytes():
    base = None
    for workers in ("1", "8"):
        r = _run_subprocess("verify", "prop1", "--dom", "mat:2:zmod:2",
                            "--cod", "zmod:2", "--workers", workers)
        assert r.returncode == 0
        if base is None:
            base = r.stdout
        else:
            assert r.stdout == base


def test_repeated_runs_byte_identical():
    a = _run_subprocess("enumerate", "--dom", "zmod:4", "--cod", "zmod:4")
    b = _run_subprocess("enumerate", "--dom", "zmod:4", "--cod", "zmod:4")
    assert a.stdout == b.stdout


def test_enumerate_workers_byte_identical():
    outs = [_run_subprocess("enumerate", "--dom", "mat:2:zmod:2",
                            "--cod", "zmod:2", "--workers", w).stdout
            for w in ("1", "3")]
    assert outs[0] and outs[0] == outs[1]
