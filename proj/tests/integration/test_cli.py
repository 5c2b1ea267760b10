# SPDX-License-Identifier: Apache-2.0
#
# nfsar - near-field freehand MIMO-SAR simulation and reconstruction toolkit
# Copyright (C) 2026 The nfsar Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

"""End-to-end tests of the nfsar command-line tool and the on-disk formats."""

import json
import os
import subprocess
import sys
import zlib
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(ROOT / "python"))

import nfsar_dataset as nd  # noqa: E402

CLI = str(Path(os.environ.get("NFSAR_CLI", ROOT / "build" / "nfsar")).resolve())
TINY = str(ROOT / "tests" / "data" / "tiny_profile.json")


def run(*args, cwd=None, check=True):
    proc = subprocess.run([CLI, *map(str, args)], cwd=cwd, capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(f"nfsar {' '.join(map(str, args))} exited {proc.returncode}:\n{proc.stderr}")
    return proc


def log_lines(stderr):
    return [json.loads(line) for line in stderr.splitlines() if line.strip()]


def test_help_version_and_usage_errors():
    assert run("--help").returncode == 0
    assert run("--version").stdout.strip()
    assert run(check=False).returncode == 2
    assert run("reconstruct", "--algo", "fft", check=False).returncode == 2
    assert run("--profile", "nope", "profile", check=False).returncode == 2


def test_runtime_errors_are_json_lines(tmp_path):
    proc = run("metrics", "--a", tmp_path / "missing.nfsi", "--b", tmp_path / "missing.nfsi", check=False)
    assert proc.returncode == 1
    record = log_lines(proc.stderr)[-1]
    assert record["level"] == "error"
    assert record["event"] == "failure"
    assert "io-error" in record["message"]


def test_profile_dump_round_trips():
    desk = json.loads(run("profile").stdout)
    assert desk["name"] == "desk"
    tiny = json.loads(run("--profile", TINY, "profile").stdout)
    assert tiny == json.loads(Path(TINY).read_text())


def test_pipeline(tmp_path):
    p = ("--profile", TINY, "--seed", 3)
    run(*p, "scene", "gen", "--out", "s.json", "--ideal", "ideal.nfsi", "--png", "ideal.png", cwd=tmp_path)
    run(*p, "trajectory", "gen", "--kind", "freehand", "--out", "t.json", cwd=tmp_path)
    run(*p, "trajectory", "perturb", "--in", "t.json", "--out", "te.json", cwd=tmp_path)
    run(*p, "simulate", "--scene", "s.json", "--traj", "t.json", "--out", "raw.nfsr", "--snr", 25, cwd=tmp_path)

    manifest = json.loads((tmp_path / "raw.nfsr.json").read_text())
    n_meas, n_freq = manifest["n_meas"], manifest["n_freq"]
    assert n_meas == 8 * 8 * 2 * 4
    assert n_freq == 16
    assert (tmp_path / "raw.nfsr").stat().st_size == 16 + 8 * n_meas * n_freq
    assert (tmp_path / "ideal.png").read_bytes()[:4] == b"\x89PNG"

    for algo in ("bpa", "rma", "empm-rma"):
        run(*p, "reconstruct", "--algo", algo, "--raw", "raw.nfsr", "--traj", "te.json", "--out", f"{algo}.nfsi",
            cwd=tmp_path)
        img = nd.read_image(tmp_path / f"{algo}.nfsi")
        assert img.pixels.shape == (16, 16)
        assert img.pixels.min() >= 0.0
        assert img.pixels.max() == pytest.approx(1.0)

    out = run("metrics", "--a", "bpa.nfsi", "--b", "ideal.nfsi", cwd=tmp_path).stdout
    records = {r["metric"]: r["value"] for r in map(json.loads, out.splitlines())}
    a = nd.read_image(tmp_path / "bpa.nfsi").pixels.astype(np.float64)
    b = nd.read_image(tmp_path / "ideal.nfsi").pixels.astype(np.float64)
    rmse = float(np.sqrt(np.mean((a - b) ** 2)))
    assert records["rmse"] == pytest.approx(rmse, rel=1e-12)
    assert records["psnr_db"] == pytest.approx(20 * np.log10(1 / rmse), rel=1e-12)
    assert records["ncc"] == pytest.approx(np.corrcoef(a.ravel(), b.ravel())[0, 1], abs=1e-12)


def test_same_seed_same_bytes(tmp_path):
    for d in ("a", "b"):
        (tmp_path / d).mkdir()
        run("--profile", TINY, "--seed", 17, "scene", "gen", "--out", "s.json", "--ideal", "i.nfsi", cwd=tmp_path / d)
        run("--profile", TINY, "--seed", 17, "trajectory", "gen", "--out", "t.json", cwd=tmp_path / d)
    for name in ("s.json", "i.nfsi", "t.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_config_file_and_flag_precedence(tmp_path):
    (tmp_path / "c.toml").write_text(f'seed = 17\nprofile = "{TINY}"\n')
    run("--config", "c.toml", "scene", "gen", "--out", "cfg.json", cwd=tmp_path)
    run("--profile", TINY, "--seed", 17, "scene", "gen", "--out", "flag.json", cwd=tmp_path)
    assert (tmp_path / "cfg.json").read_text() == (tmp_path / "flag.json").read_text()
    run("--config", "c.toml", "--seed", 18, "scene", "gen", "--out", "over.json", cwd=tmp_path)
    assert (tmp_path / "over.json").read_text() != (tmp_path / "cfg.json").read_text()


def test_dataset_generate_read_verify(tmp_path):
    run("--profile", TINY, "--seed", 5, "dataset", "generate", "--out", "ds", "--checkpoint-every", 2, cwd=tmp_path)
    root = tmp_path / "ds"
    manifest = nd.read_manifest(root)
    assert manifest["format"] == "nfsar-dataset"
    assert manifest["complete"] is True
    assert manifest["base_seed"] == 5
    assert manifest["splits"]["train"]["count"] == 3
    assert manifest["splits"]["test"]["count"] == 2

    train_seeds = {e["seed"] for e in manifest["splits"]["train"]["samples"]}
    test_seeds = {e["seed"] for e in manifest["splits"]["test"]["samples"]}
    assert not train_seeds & test_seeds

    for split in ("train", "test"):
        for entry in manifest["splits"][split]["samples"]:
            buf = (root / entry["file"]).read_bytes()
            assert len(buf) == entry["bytes"]
            assert zlib.crc32(buf) == entry["crc32"]

    inputs, targets = nd.load_split_arrays(root, "train")
    assert inputs.shape == targets.shape == (3, 16, 16)
    assert inputs.dtype == np.float32
    assert 0.0 <= inputs.min() and inputs.max() <= 1.0
    assert 0.0 <= targets.min() and targets.max() <= 1.0
    sample = next(nd.iterate_split(root, "test"))
    assert sample.meta["trajectory_kind"] == "freehand"
    assert {"sigma", "snr_db", "z_span", "scene"} <= sample.meta.keys()

    run("dataset", "verify", "--dir", root)

    # Regeneration with the same seed is byte-identical.
    run("--profile", TINY, "--seed", 5, "dataset", "generate", "--out", "again", cwd=tmp_path)
    for path in sorted(root.rglob("*")):
        if path.is_file():
            assert path.read_bytes() == (tmp_path / "again" / path.relative_to(root)).read_bytes(), path

    # A flipped byte is caught by both readers.
    target = root / manifest["splits"]["train"]["samples"][1]["file"]
    buf = bytearray(target.read_bytes())
    buf[100] ^= 0x01
    target.write_bytes(bytes(buf))
    with pytest.raises(nd.CorruptData):
        nd.read_sample(target)
    proc = run("dataset", "verify", "--dir", root, check=False)
    assert proc.returncode == 1
    assert "corrupt-data" in log_lines(proc.stderr)[-1]["message"]

    # Resume repairs it and reuses the rest.
    proc = run("--profile", TINY, "--seed", 5, "dataset", "generate", "--out", "ds", cwd=tmp_path)
    run("dataset", "verify", "--dir", root)
    assert target.read_bytes() == (tmp_path / "again" / target.relative_to(root)).read_bytes()

    # A different seed in the same directory is refused.
    proc = run("--profile", TINY, "--seed", 6, "dataset", "generate", "--out", "ds", cwd=tmp_path, check=False)
    assert proc.returncode == 1


def test_bench_table(tmp_path):
    proc = run("--profile", TINY, "bench", "--scenes", 2, "--csv", "-", "--jsonl", "b.jsonl", cwd=tmp_path)
    rows = [line.split(",") for line in proc.stdout.strip().splitlines()]
    assert rows[0] == ["Metrics", "BPA", "EMPM", "RMA"]
    assert [r[0] for r in rows[1:]] == ["PSNR (dB)", "RMSE", "Time (s)"]
    for r in rows[1:]:
        assert all(np.isfinite(float(v)) for v in r[1:])
    records = [json.loads(line) for line in (tmp_path / "b.jsonl").read_text().splitlines()]
    aggregates = [r for r in records if "algorithm" in r]
    assert [r["algorithm"] for r in aggregates] == ["BPA", "EMPM", "RMA"]
    assert all(r["machine"] for r in aggregates)
