import json
import os
import subprocess

BASE = ["python3", "-m", "localp1p1.cli"]


def _run(args, env_extra=None):
    env = dict(os.environ)
    env.update(env_extra or {})
    return subprocess.run(
        BASE + args, capture_output=True, text=True, env=env, timeout=560
    )


def test_relations_command(tmp_path):
    out = tmp_path / "art"
    r = _run(["relations", "--lam", "3", "--mu", "5", "-D", "4", "--out", str(out)])
    assert r.returncode == 0, r.stdout + r.stderr
    payload = json.loads((out / "relations.json").read_text())
    assert payload["schema_version"] == 1
    assert all(row["ok"] for row in payload["checks"] if row["required"])
    assert "a1" in payload and "a2" in payload


def test_iseries_command(tmp_path):
    r = _run(["iseries", "-D", "4", "--out", str(tmp_path)])
    assert r.returncode == 0, r.stdout + r.stderr
    payload = json.loads((tmp_path / "iseries.json").read_text())
    assert all(row["ok"] for row in payload["checks"])


def test_hae_command_small(tmp_path):
    r = _run(["hae", "-g", "2", "-D", "4", "--out", str(tmp_path)])
    assert r.returncode == 0, r.stdout + r.stderr
    payload = json.loads((tmp_path / "hae.json").read_text())
    assert payload["closing"] == [["exclude-genus0", "derived+1"]]


def test_hae_genus0_split_flag_fails(tmp_path):
    r = _run(["hae", "-g", "2", "-D", "4", "--hae-genus0-split"])
    assert r.returncode == 1
    assert "hae-closes-for-configured-split-include-genus0" in r.stdout


def test_artifacts_deterministic_and_cache_independent(tmp_path):
    """Byte-identical artifacts across reruns, with and without a warm cache."""
    out1, out2, out3 = (tmp_path / d for d in ("a", "b", "c"))
    cache = tmp_path / "cache"
    env = {"LOCALP1P1_CACHE": str(cache)}
    args = ["fg", "-g", "2", "-D", "4"]
    assert _run(args + ["--out", str(out1)], env).returncode == 0
    assert (cache / "psi_cache.jsonl").exists()
    assert _run(args + ["--out", str(out2)], env).returncode == 0
    # delete the cache and run once more
    (cache / "psi_cache.jsonl").unlink()
    assert _run(args + ["--out", str(out3)], env).returncode == 0
    b1 = (out1 / "fg.json").read_bytes()
    assert b1 == (out2 / "fg.json").read_bytes()
    assert b1 == (out3 / "fg.json").read_bytes()


def test_invalid_weights_rejected():
    r = _run(["relations", "--lam", "3", "--mu", "3", "-D", "3"])
    assert r.returncode != 0
