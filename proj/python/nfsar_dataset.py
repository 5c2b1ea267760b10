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

"""Reader for nfsar SarImage files, dataset sample files and dataset manifests.

Pure numpy; independent of the C++ library. Intended as the loading layer of
training code.
"""

from __future__ import annotations

import json
import struct
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

SAMPLE_MAGIC = b"NFSS"
IMAGE_MAGIC = b"NFSI"
DATASET_FORMAT_VERSION = 1


class CorruptData(ValueError):
    pass


@dataclass
class SarImage:
    pixels: np.ndarray  # float32, shape (ny, nx), row iy holds y = y_at(iy)
    width: float
    height: float
    plane_z: float


@dataclass
class Sample:
    input: SarImage
    target: SarImage
    meta: dict


def _decode_image(buf: bytes, offset: int) -> tuple[SarImage, int]:
    if buf[offset:offset + 4] != IMAGE_MAGIC:
        raise CorruptData("bad image magic")
    nx, ny, width, height, plane_z = struct.unpack_from("<IIddd", buf, offset + 4)
    offset += 4 + struct.calcsize("<IIddd")
    n = nx * ny
    if offset + 4 * n > len(buf):
        raise CorruptData("image payload truncated")
    pixels = np.frombuffer(buf, dtype="<f4", count=n, offset=offset).reshape(ny, nx).astype(np.float32)
    return SarImage(pixels, width, height, plane_z), offset + 4 * n


def read_image(path: str | Path) -> SarImage:
    buf = Path(path).read_bytes()
    img, end = _decode_image(buf, 0)
    if end != len(buf):
        raise CorruptData("trailing bytes after image")
    return img


def decode_sample(buf: bytes) -> Sample:
    if len(buf) < 8:
        raise CorruptData("sample too short")
    (crc,) = struct.unpack_from("<I", buf, len(buf) - 4)
    if zlib.crc32(buf[:-4]) != crc:
        raise CorruptData("checksum mismatch")
    if buf[:4] != SAMPLE_MAGIC:
        raise CorruptData("bad sample magic")
    version, seed = struct.unpack_from("<IQ", buf, 4)
    if version != DATASET_FORMAT_VERSION:
        raise CorruptData(f"unsupported version {version}")
    inp, off = _decode_image(buf, 16)
    tgt, off = _decode_image(buf, off)
    (meta_len,) = struct.unpack_from("<I", buf, off)
    off += 4
    meta = json.loads(buf[off:off + meta_len].decode("utf-8"))
    if off + meta_len != len(buf) - 4:
        raise CorruptData("trailing bytes in sample")
    if meta["seed"] != seed:
        raise CorruptData("header seed disagrees with meta")
    return Sample(inp, tgt, meta)


def read_sample(path: str | Path) -> Sample:
    return decode_sample(Path(path).read_bytes())


def read_manifest(root: str | Path) -> dict:
    return json.loads((Path(root) / "manifest.json").read_text())


def iterate_split(root: str | Path, split: str) -> Iterator[Sample]:
    """Yields the samples of `split` in index order, checking the manifest CRCs."""
    root = Path(root)
    manifest = read_manifest(root)
    for entry in manifest["splits"][split]["samples"]:
        buf = (root / entry["file"]).read_bytes()
        if zlib.crc32(buf) != entry["crc32"]:
            raise CorruptData(f"{entry['file']}: checksum does not match manifest")
        sample = decode_sample(buf)
        if sample.meta["seed"] != entry["seed"]:
            raise CorruptData(f"{entry['file']}: unexpected seed")
        yield sample


def load_split_arrays(root: str | Path, split: str) -> tuple[np.ndarray, np.ndarray]:
    """Stacks a split into (inputs, targets), each float32 of shape (n, ny, nx)."""
    inputs, targets = [], []
    for s in iterate_split(root, split):
        inputs.append(s.input.pixels)
        targets.append(s.target.pixels)
    return np.stack(inputs), np.stack(targets)
