"""Text grid format for configurations.

One character per cell: ``.`` empty, ``A`` and ``B`` for the two sets.  Rows
run top-to-bottom with increasing y, characters left-to-right with
increasing x.  3D files list z-layers in increasing z, separated by a single
blank line.  Lines starting with ``#`` are comments; two of them are read as
directives::

    # dim: 3
    # origin: -2 0 5

``dim`` disambiguates a single-layer 3D file (default: 2D for one layer),
``origin`` is the lattice coordinate of the first character of the first row
of the first layer (default all zeros).
"""
from __future__ import annotations

import io
import os
from pathlib import Path
from typing import TextIO

import numpy as np

from .geometry import Configuration, GeometryError, GridSet, label_array

CHARS = {".": 0, "A": 1, "B": 2}


class GridParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _open_text(src) -> tuple[str, bool]:
    if isinstance(src, (str, os.PathLike)) and not (isinstance(src, str) and "\n" in src):
        return Path(src).read_text(encoding="ascii"), True
    if hasattr(src, "read"):
        return src.read(), True
    return str(src), False


def parse_grid(text: str) -> Configuration:
    dim = None
    origin = None
    body: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if line.lstrip().startswith("#"):
            key, _, value = line.lstrip()[1:].partition(":")
            key = key.strip().lower()
            if key == "dim":
                try:
                    dim = int(value)
                except ValueError:
                    raise GridParseError(f"bad dim directive {value.strip()!r}", lineno) from None
                if dim not in (2, 3):
                    raise GridParseError(f"dim must be 2 or 3, got {dim}", lineno)
            elif key == "origin":
                try:
                    origin = tuple(int(v) for v in value.split())
                except ValueError:
                    raise GridParseError(f"bad origin directive {value.strip()!r}", lineno) from None
            continue
        body.append((lineno, line))
    while body and not body[0][1]:
        body.pop(0)
    while body and not body[-1][1]:
        body.pop()

    layers: list[tuple[int, list[tuple[int, str]]]] = []
    current: list[tuple[int, str]] = []
    prev_blank = False
    for lineno, line in body:
        if not line:
            if prev_blank:
                raise GridParseError("layers must be separated by a single blank line", lineno)
            prev_blank = True
            layers.append((current[0][0], current))
            current = []
            continue
        prev_blank = False
        for ch in line:
            if ch not in CHARS:
                raise GridParseError(f"unknown cell character {ch!r}", lineno)
        if current and len(line) != len(current[0][1]):
            raise GridParseError(f"ragged row: expected width {len(current[0][1])}, got {len(line)}", lineno)
        current.append((lineno, line))
    if current:
        layers.append((current[0][0], current))
    if not layers:
        raise GridParseError("no grid rows found")

    width, height = len(layers[0][1][0][1]), len(layers[0][1])
    for start, rows in layers[1:]:
        if len(rows) != height or len(rows[0][1]) != width:
            raise GridParseError(
                f"layer size {len(rows[0][1])}x{len(rows)} differs from first layer {width}x{height}", start
            )
    if dim is None:
        dim = 3 if len(layers) > 1 else 2
    if dim == 2 and len(layers) != 1:
        raise GridParseError(f"2D file must contain exactly one layer, found {len(layers)}")
    if origin is None:
        origin = (0,) * dim
    if len(origin) != dim:
        raise GridParseError(f"origin has {len(origin)} coordinates, expected {dim}")

    lab = np.zeros((width, height, len(layers)), dtype=np.int8)
    for z, (_, rows) in enumerate(layers):
        for y, (_, row) in enumerate(rows):
            lab[:, y, z] = [CHARS[ch] for ch in row]
    if dim == 2:
        lab = lab[:, :, 0]
    A = GridSet(origin, lab == 1)
    B = GridSet(origin, lab == 2)
    try:
        return Configuration(A, B)
    except GeometryError as exc:
        raise GridParseError(str(exc)) from None


def read_grid(src: str | os.PathLike | TextIO) -> Configuration:
    """Read a configuration from a path, an open text file, or a grid string."""
    text, _ = _open_text(src)
    return parse_grid(text)


def format_grid(cfg: Configuration, comment: str | None = None) -> str:
    lab, lo = label_array(cfg.A, cfg.B, pad=0)
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"# dim: {cfg.dimension}")
    lines.append("# origin: " + " ".join(str(v) for v in lo))
    if cfg.dimension == 2:
        lab = lab[:, :, None]
    glyph = ".AB"
    for z in range(lab.shape[2]):
        if z:
            lines.append("")
        for y in range(lab.shape[1]):
            lines.append("".join(glyph[v] for v in lab[:, y, z]))
    return "\n".join(lines) + "\n"


def write_grid(cfg: Configuration, dest: str | os.PathLike | TextIO, comment: str | None = None) -> None:
    text = format_grid(cfg, comment)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text, encoding="ascii")


def roundtrip(cfg: Configuration) -> Configuration:
    buf = io.StringIO()
    write_grid(cfg, buf)
    return parse_grid(buf.getvalue())
