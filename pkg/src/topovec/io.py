"""File formats: barcode CSV, point-cloud CSV, grayscale images (PGM P2/P5, CSV).

Barcode files are UTF-8 CSV with one bar per line, ``dim,birth,death``.
Multiplicity is expressed by repeating the line and ``inf`` is accepted as a
death value.  A single header line ``dim,birth,death`` is optional.
"""
from __future__ import annotations

import math
import re
from pathlib import Path
from typing import Mapping

import numpy as np

from .barcode import Barcode, Interval
from .filtration import GrayscaleImage, PointCloud

BARCODE_HEADER = "dim,birth,death"


class BarcodeFileError(ValueError):
    """Malformed barcode / data file, reported with its line number."""


def _parse_float(token: str, line_no: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise BarcodeFileError(f"line {line_no}: cannot parse {what} from {token!r}") from None
    if math.isnan(value):
        raise BarcodeFileError(f"line {line_no}: {what} is NaN")
    return value


def parse_barcodes(text: str) -> dict[int, Barcode]:
    """Parse barcode CSV text into one Barcode per homology dimension."""
    bars: dict[int, list] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line_no == 1 and re.fullmatch(r"dim\s*,\s*birth\s*,\s*death", line, re.I):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise BarcodeFileError(f"line {line_no}: expected 3 fields, got {len(parts)}")
        try:
            dim = int(parts[0])
        except ValueError:
            raise BarcodeFileError(f"line {line_no}: bad dimension {parts[0]!r}") from None
        if dim < 0:
            raise BarcodeFileError(f"line {line_no}: negative dimension {dim}")
        birth = _parse_float(parts[1], line_no, "birth")
        death = _parse_float(parts[2], line_no, "death")
        if not math.isfinite(birth):
            raise BarcodeFileError(f"line {line_no}: birth must be finite")
        if death < birth:
            raise BarcodeFileError(f"line {line_no}: birth {birth} exceeds death {death}")
        bars.setdefault(dim, []).append(Interval(birth, death))
    return {dim: Barcode(dim, entries) for dim, entries in sorted(bars.items())}


def read_barcodes(path) -> dict[int, Barcode]:
    return parse_barcodes(Path(path).read_text(encoding="utf-8"))


def format_barcodes(barcodes: Mapping[int, Barcode], header: bool = True) -> str:
    lines = [BARCODE_HEADER] if header else []
    for dim in sorted(barcodes):
        for interval, mult in barcodes[dim]:
            death = "inf" if interval.is_essential else repr(interval.death)
            lines.extend([f"{dim},{interval.birth!r},{death}"] * mult)
    return "\n".join(lines) + "\n"


def write_barcodes(barcodes: Mapping[int, Barcode], path) -> None:
    Path(path).write_text(format_barcodes(barcodes), encoding="utf-8")


def parse_point_cloud(text: str) -> PointCloud:
    """CSV with one point per row; all rows must share a dimension."""
    rows = []
    width = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if line_no == 1 and any(not _is_number(p) for p in parts):
            continue  # header row
        coords = [_parse_float(p, line_no, "coordinate") for p in parts]
        if width is None:
            width = len(coords)
        elif len(coords) != width:
            raise BarcodeFileError(
                f"line {line_no}: expected {width} coordinates, got {len(coords)}"
            )
        rows.append(coords)
    if not rows:
        raise BarcodeFileError("point cloud file contains no points")
    return PointCloud(np.array(rows, dtype=np.float64))


def _is_number(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def read_point_cloud(path) -> PointCloud:
    return parse_point_cloud(Path(path).read_text(encoding="utf-8"))


def write_point_cloud(pc: PointCloud, path) -> None:
    lines = [",".join(repr(float(v)) for v in row) for row in pc.points]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def parse_image_csv(text: str) -> GrayscaleImage:
    """CSV matrix of intensities, one image row per line."""
    rows = []
    width = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        values = [_parse_float(p.strip(), line_no, "intensity") for p in line.split(",")]
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise BarcodeFileError(f"line {line_no}: ragged image row")
        rows.append(values)
    if not rows:
        raise BarcodeFileError("image file contains no pixels")
    data = np.array(rows, dtype=np.float64)
    return GrayscaleImage(width=data.shape[1], height=data.shape[0], intensities=data.ravel())


def parse_pgm(data: bytes) -> GrayscaleImage:
    """PGM in plain (P2) or binary (P5) form."""
    if not data.startswith((b"P2", b"P5")):
        raise BarcodeFileError("not a PGM file (missing P2/P5 magic)")
    binary = data.startswith(b"P5")

    # Strip comments, then read magic, width, height, maxval token-wise.
    pos = 2
    tokens: list[int] = []
    while len(tokens) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise BarcodeFileError("truncated PGM header")
        try:
            tokens.append(int(data[start:pos]))
        except ValueError:
            raise BarcodeFileError(f"bad PGM header token {data[start:pos]!r}") from None
    width, height, maxval = tokens
    if width < 1 or height < 1 or maxval < 1:
        raise BarcodeFileError("invalid PGM dimensions")

    if binary:
        pos += 1  # single whitespace byte after maxval
        count = width * height
        itemsize = 2 if maxval > 255 else 1
        if len(data) - pos < count * itemsize:
            raise BarcodeFileError("truncated PGM pixel data")
        dtype = ">u2" if maxval > 255 else np.uint8
        pixels = np.frombuffer(data, dtype=dtype, count=count, offset=pos).astype(np.float64)
    else:
        body = data[pos:].split()
        if len(body) < width * height:
            raise BarcodeFileError("truncated PGM pixel data")
        pixels = np.array([float(int(t)) for t in body[: width * height]])
    return GrayscaleImage(width=width, height=height, intensities=pixels)


def read_image(path) -> GrayscaleImage:
    """Read a grayscale image from PGM (P2/P5) or CSV matrix by content."""
    path = Path(path)
    data = path.read_bytes()
    if data.startswith((b"P2", b"P5")):
        return parse_pgm(data)
    return parse_image_csv(data.decode("utf-8"))


def write_pgm(values: np.ndarray, path, maxval: int = 255) -> None:
    """Write a 2-D float array as a plain (P2) PGM, rescaled to 0..maxval."""
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError("expected a 2-D array")
    lo, hi = float(values.min()), float(values.max())
    scale = (maxval / (hi - lo)) if hi > lo else 0.0
    quantized = np.rint((values - lo) * scale).astype(int)
    lines = ["P2", f"{values.shape[1]} {values.shape[0]}", str(maxval)]
    lines += [" ".join(str(v) for v in row) for row in quantized]
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")
