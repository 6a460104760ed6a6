"""Minimal PGM/PBM reading and writing (P2, P5 in; P1 out)."""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np


class PGMError(ValueError):
    pass


def _tokens(data: bytes, count: int, start: int = 0) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping # comments."""
    out = []
    pos = start
    pattern = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")
    for _ in range(count):
        m = pattern.match(data, pos)
        if not m:
            raise PGMError("truncated PGM header")
        out.append(m.group(1))
        pos = m.end()
    return out, pos


def read_pgm(path) -> tuple[np.ndarray, int]:
    """Return (pixels of shape (height, width), maxval)."""
    data = Path(path).read_bytes()
    (magic, w, h, maxval), pos = _tokens(data, 4)
    try:
        width, height, maxval = int(w), int(h), int(maxval)
    except ValueError as exc:
        raise PGMError(f"{path}: malformed header") from exc
    if width < 1 or height < 1 or not 0 < maxval < 256:
        raise PGMError(f"{path}: unsupported dimensions or maxval (8-bit only)")
    if magic == b"P2":
        vals, _ = _tokens(data, width * height, pos)
        pixels = np.array([int(v) for v in vals], dtype=np.int64)
    elif magic == b"P5":
        raster = data[pos + 1 : pos + 1 + width * height]
        if len(raster) != width * height:
            raise PGMError(f"{path}: truncated raster")
        pixels = np.frombuffer(raster, dtype=np.uint8).astype(np.int64)
    else:
        raise PGMError(f"{path}: unsupported magic {magic!r}")
    if pixels.max(initial=0) > maxval:
        raise PGMError(f"{path}: pixel value exceeds maxval")
    return pixels.reshape(height, width), maxval


def write_pgm(path, pixels: np.ndarray, maxval: int = 255, binary: bool = False) -> None:
    pixels = np.asarray(pixels, dtype=np.int64)
    height, width = pixels.shape
    if binary:
        header = f"P5\n{width} {height}\n{maxval}\n".encode()
        Path(path).write_bytes(header + pixels.astype(np.uint8).tobytes())
    else:
        rows = "\n".join(" ".join(str(v) for v in row) for row in pixels)
        Path(path).write_text(f"P2\n{width} {height}\n{maxval}\n{rows}\n")


def write_mask(path, mask: np.ndarray) -> None:
    """Write a P1 bitmap; 1 marks segment A."""
    mask = np.asarray(mask, dtype=np.int64)
    height, width = mask.shape
    rows = "\n".join(" ".join(str(int(v)) for v in row) for row in mask)
    Path(path).write_text(f"P1\n{width} {height}\n{rows}\n")


def read_mask(path) -> np.ndarray:
    data = Path(path).read_bytes()
    (magic, w, h), pos = _tokens(data, 3)
    if magic != b"P1":
        raise PGMError(f"{path}: expected P1 bitmap")
    width, height = int(w), int(h)
    bits = re.findall(rb"[01]", re.sub(rb"#[^\n]*", b"", data[pos:]))
    if len(bits) != width * height:
        raise PGMError(f"{path}: expected {width * height} bits, got {len(bits)}")
    return np.array([int(b) for b in bits], dtype=np.uint8).reshape(height, width)
