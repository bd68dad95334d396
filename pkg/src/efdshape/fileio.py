"""Text file formats: boundary and chain files, descriptor CSVs, info tables.

All writers build the full text first and publish it atomically (temp file
plus rename), and all floats go through repr so values survive a round trip
exactly and carry well past 12 significant digits.
"""

from __future__ import annotations

import csv
import io
import os
from pathlib import Path
from typing import Sequence

import numpy as np

from .contour import ChainCode, PolyContour, chain_to_contour
from .efd import EfdSet
from .errors import MixedHarmonicCounts, ParseError
from .normalize import NormalizationReport

REPORT_COLUMNS = ("omega", "theta_star", "major_len", "reversed", "halfshift_applied", "reflection_applied")


def format_float(x: float) -> str:
    return repr(float(x))


def write_text(path, text: str) -> None:
    """Atomic write: the file either keeps its old content or has all the new."""
    path = Path(path)
    tmp = path.with_name(f"{path.name}.tmp{os.getpid()}")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def save_boundary(path, contour: PolyContour) -> None:
    lines = [f"{format_float(x)} {format_float(y)}" for x, y in contour.vertices]
    write_text(path, "\n".join(lines) + "\n")


def load_boundary(path) -> PolyContour:
    """Read an 'x y' per line vertex file (y-up, closing edge implicit)."""
    points = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            parts = stripped.split()
            if len(parts) != 2:
                raise ParseError(path, lineno, f"expected two numbers, got {len(parts)} tokens")
            try:
                points.append((float(parts[0]), float(parts[1])))
            except ValueError:
                raise ParseError(path, lineno, f"not a number: {stripped!r}") from None
    if not points:
        raise ParseError(path, 1, "no vertices in boundary file")
    return PolyContour(np.array(points))


def save_chain(path, code: ChainCode) -> None:
    write_text(path, str(code) + "\n")


def load_chain(path) -> ChainCode:
    """Read a single-line digit file; the start point defaults to the origin."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line.strip() for line in fh]
    content = [(i + 1, line) for i, line in enumerate(lines) if line]
    if not content:
        raise ParseError(path, 1, "no chain code in file")
    if len(content) > 1:
        raise ParseError(path, content[1][0], "chain file must hold a single line of digits")
    lineno, text = content[0]
    if not set(text) <= set("01234567"):
        raise ParseError(path, lineno, "chain line may only contain digits 0-7")
    return ChainCode(text)


def load_contour_any(path) -> PolyContour:
    """Load a boundary or chain file by sniffing the content."""
    with open(path, "r", encoding="utf-8") as fh:
        head = ""
        for line in fh:
            head = line.strip()
            if head:
                break
    if head and " " not in head and set(head) <= set("01234567"):
        return chain_to_contour(load_chain(path))
    return load_boundary(path)


def _header_for(n_harmonics: int, extras: Sequence[str] = ()) -> list[str]:
    cols = ["A0", "C0"]
    for n in range(1, n_harmonics + 1):
        cols += [f"a{n}", f"b{n}", f"c{n}", f"d{n}"]
    cols += list(extras)
    return cols


def build_efd_csv(
    efds: Sequence[EfdSet],
    normalized: str = "none",
    reports: Sequence[NormalizationReport] | None = None,
) -> str:
    """Descriptor table, one row per shape.

    With normalized="true" a comment line marks the content and the
    normalization diagnostics ride along as extra columns.
    """
    efds = list(efds)
    counts = {e.n_harmonics for e in efds}
    if len(counts) > 1:
        raise MixedHarmonicCounts(f"harmonic counts differ: {sorted(counts)}")
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if normalized != "none":
        out.write(f"# normalized={normalized}\n")
    extras = REPORT_COLUMNS if normalized == "true" else ()
    writer.writerow(_header_for(efds[0].n_harmonics, extras))
    for i, e in enumerate(efds):
        row = [format_float(v) for v in e.flattened()]
        if extras:
            r = reports[i]
            row += [
                format_float(r.omega),
                format_float(r.theta_star),
                format_float(r.major_len),
                str(int(r.reversed)),
                str(int(r.halfshift_applied)),
                str(int(r.reflection_applied)),
            ]
        writer.writerow(row)
    return out.getvalue()


def parse_efd_csv(text: str, path="<string>") -> tuple[list[EfdSet], str]:
    """Read a descriptor table back; returns the sets and the normalized tag."""
    normalized = "none"
    rows = []
    line_numbers = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            stripped = line[1:].strip()
            if stripped.startswith("normalized="):
                normalized = stripped.split("=", 1)[1].strip()
            continue
        rows.append(line)
        line_numbers.append(lineno)
    if not rows:
        raise ParseError(path, 1, "no descriptor rows")
    parsed = list(csv.reader(rows))
    header = parsed[0]
    if header[:2] != ["A0", "C0"] or len(header) < 6:
        raise ParseError(path, line_numbers[0], "header must start A0,C0,a1,b1,c1,d1,...")
    n = 0
    while 2 + 4 * (n + 1) <= len(header) and header[2 + 4 * n] == f"a{n + 1}":
        n += 1
    if n < 1 or header[2 : 2 + 4 * n] != _header_for(n)[2:]:
        raise ParseError(path, line_numbers[0], "harmonic columns must run a1,b1,c1,d1,...")
    width = 2 + 4 * n
    efds = []
    for lineno, row in zip(line_numbers[1:], parsed[1:]):
        if len(row) < width:
            raise ParseError(path, lineno, f"expected at least {width} columns, got {len(row)}")
        try:
            values = [float(v) for v in row[:width]]
        except ValueError:
            raise ParseError(path, lineno, "non-numeric coefficient") from None
        efds.append(EfdSet(values[0], values[1], np.array(values[2:]).reshape(-1, 4)))
    if not efds:
        raise ParseError(path, line_numbers[0], "descriptor file has a header but no rows")
    return efds, normalized


def load_efd_csv(path) -> tuple[list[EfdSet], str]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_efd_csv(fh.read(), path=path)


def build_info_csv(rows: Sequence[tuple[str, float, float, float]]) -> str:
    """label, area_mm2, perimeter_mm, scale_mm_per_px table."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["label", "area_mm2", "perimeter_mm", "scale_mm_per_px"])
    for label, area_mm2, perimeter_mm, scale in rows:
        writer.writerow([label, format_float(area_mm2), format_float(perimeter_mm), format_float(scale)])
    return out.getvalue()


def build_scores_csv(labels: Sequence[str], scores: np.ndarray, ratios: np.ndarray) -> str:
    """PCA score table with the explained ratios in a comment header."""
    out = io.StringIO()
    out.write("# explained_variance_ratio=" + ",".join(format_float(r) for r in ratios) + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["label"] + [f"pc{i + 1}" for i in range(scores.shape[1])])
    for label, row in zip(labels, scores):
        writer.writerow([label] + [format_float(v) for v in row])
    return out.getvalue()
