"""Basic contour transformations and the nine-case invariance audit."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contour import ChainCode, PolyContour
from .efd import compute_harmonics
from .errors import BadParameter
from .normalize import normalize_classic, normalize_true

KINDS = (
    "original",
    "translation",
    "anticlockwise_rotation",
    "scaling_up",
    "start_point_shift",
    "x_symmetric",
    "y_symmetric",
    "scaling_down",
    "reversed",
)

PASS_TOL = 1e-8


@dataclass(frozen=True)
class TransformSpec:
    """One named transformation; the parameter meaning depends on the kind.

    translation takes a (dx, dy) pair, anticlockwise_rotation an angle in
    radians, the scalings a positive factor, start_point_shift a vertex
    count, and the remaining kinds take no parameter.
    """

    kind: str
    parameter: object = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadParameter(f"unknown transformation kind: {self.kind!r}")


def _pair(parameter) -> tuple[float, float]:
    try:
        dx, dy = parameter
        return float(dx), float(dy)
    except (TypeError, ValueError):
        raise BadParameter("translation needs a (dx, dy) pair") from None


def _scalar(parameter, what: str) -> float:
    try:
        return float(parameter)
    except (TypeError, ValueError):
        raise BadParameter(f"{what} needs a numeric parameter") from None


def apply(c: PolyContour, spec: TransformSpec) -> PolyContour:
    """Vertex-wise geometric action of one transformation."""
    v = c.vertices
    kind = spec.kind
    if kind == "original":
        return c
    if kind == "translation":
        dx, dy = _pair(spec.parameter)
        return PolyContour(v + np.array([dx, dy]))
    if kind == "anticlockwise_rotation":
        phi = _scalar(spec.parameter, "rotation")
        cs, sn = np.cos(phi), np.sin(phi)
        r = np.array([[cs, -sn], [sn, cs]])
        return PolyContour(v @ r.T)
    if kind in ("scaling_up", "scaling_down"):
        k = _scalar(spec.parameter, "scaling")
        if k <= 0:
            raise BadParameter("scale factor must be positive")
        return PolyContour(v * k)
    if kind == "start_point_shift":
        j = _scalar(spec.parameter, "start shift")
        if j != int(j) or not 0 <= int(j) < len(v):
            raise BadParameter(f"shift must be an integer in 0..{len(v) - 1}")
        return PolyContour(np.roll(v, -int(j), axis=0))
    if kind == "x_symmetric":
        return PolyContour(v * np.array([1.0, -1.0]))
    if kind == "y_symmetric":
        return PolyContour(v * np.array([-1.0, 1.0]))
    # reversed
    return PolyContour(v[::-1].copy())


def rotate_links(code: ChainCode, steps: int) -> ChainCode:
    """Relabel chain directions by 45-degree steps (anticlockwise, about the start).

    Exact geometric rotation for multiples of 90 degrees; odd multiples also
    swap the unit and diagonal link lengths, which is inherent to the grid.
    """
    steps = int(steps)
    return ChainCode((code.links + steps) % 8, start=code.start)


def nine_specs(c: PolyContour) -> tuple[TransformSpec, ...]:
    """The audit's fixed transformation battery for a given contour."""
    return (
        TransformSpec("original"),
        TransformSpec("translation", (17.0, -5.0)),
        TransformSpec("anticlockwise_rotation", np.pi / 3.0),
        TransformSpec("scaling_up", 2.5),
        TransformSpec("start_point_shift", len(c) // 3),
        TransformSpec("x_symmetric"),
        TransformSpec("y_symmetric"),
        TransformSpec("scaling_down", 0.4),
        TransformSpec("reversed"),
    )


def nine_suite(c: PolyContour) -> list[PolyContour]:
    """The contour under all nine transformations, original in slot 0."""
    if len(c) < 4:
        raise BadParameter("the audit suite needs a contour with at least 4 vertices")
    return [apply(c, spec) for spec in nine_specs(c)]


@dataclass(frozen=True)
class AuditRow:
    kind: str
    true_dev: float
    classic_dev: float

    @property
    def true_pass(self) -> bool:
        return self.true_dev < PASS_TOL

    @property
    def classic_pass(self) -> bool:
        return self.classic_dev < PASS_TOL


@dataclass(frozen=True)
class AuditReport:
    rows: tuple[AuditRow, ...]
    n_harmonics: int

    @property
    def true_all_pass(self) -> bool:
        return all(r.true_pass for r in self.rows)

    @property
    def classic_all_pass(self) -> bool:
        return all(r.classic_pass for r in self.rows)


def invariance_audit(c: PolyContour, n_harmonics: int = 35) -> AuditReport:
    """Normalize the nine variants both ways and compare coefficients to the original."""
    specs = nine_specs(c)
    true_vecs = []
    classic_vecs = []
    for variant in nine_suite(c):
        e = compute_harmonics(variant, n_harmonics)
        canon, _ = normalize_true(e)
        true_vecs.append(canon.flattened())
        classic_vecs.append(normalize_classic(e).flattened())
    rows = []
    for i, spec in enumerate(specs):
        rows.append(
            AuditRow(
                kind=spec.kind,
                true_dev=float(np.abs(true_vecs[i] - true_vecs[0]).max()),
                classic_dev=float(np.abs(classic_vecs[i] - classic_vecs[0]).max()),
            )
        )
    return AuditReport(rows=tuple(rows), n_harmonics=int(n_harmonics))


def format_audit_text(report: AuditReport) -> str:
    """Plain-text pass/fail grid with the measured deviations."""
    lines = [
        f"invariance audit at N={report.n_harmonics} harmonics, tolerance {PASS_TOL:.0e}",
        f"{'transformation':<24} {'true dev':>12} {'true':>5} {'classic dev':>12} {'classic':>8}",
    ]
    for r in report.rows:
        lines.append(
            f"{r.kind:<24} {r.true_dev:>12.3e} {'√' if r.true_pass else '×':>5}"
            f" {r.classic_dev:>12.3e} {'√' if r.classic_pass else '×':>8}"
        )
    verdict = "pass" if report.true_all_pass else "FAIL"
    lines.append(f"true-normalization verdict: {verdict} ({sum(r.true_pass for r in report.rows)}/9)")
    return "\n".join(lines) + "\n"


def format_audit_csv(report: AuditReport) -> str:
    """Machine-readable audit table."""
    lines = ["transformation,true_max_dev,true_pass,classic_max_dev,classic_pass"]
    for r in report.rows:
        lines.append(
            f"{r.kind},{r.true_dev!r},{int(r.true_pass)},{r.classic_dev!r},{int(r.classic_pass)}"
        )
    return "\n".join(lines) + "\n"
