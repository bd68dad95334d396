"""Small deterministic SVG writers for overlays, reconstructions, scatter plots.

Output is plain text built from sorted inputs with fixed-precision floats, so
repeated runs on the same data produce byte-identical files.
"""

from __future__ import annotations

import base64
from typing import Sequence

import numpy as np

from .efd import EfdSet, reconstruct

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)


def _fmt(x: float) -> str:
    return "%.4f" % float(x)


def _polyline(points: np.ndarray, color: str, width: float, closed: bool = True) -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    tag = "polygon" if closed else "polyline"
    return f'<{tag} points="{coords}" fill="none" stroke="{color}" stroke-width="{_fmt(width)}"/>'


def contour_overlay_svg(
    width: int,
    height: int,
    points_yup: np.ndarray,
    image_bytes: bytes | None = None,
    image_type: str = "png",
) -> str:
    """Traced outline over the source raster, in image pixel coordinates.

    Vertices arrive y-up; the drawing flips them back to rows and lands each
    one on its pixel centre.
    """
    pts = np.asarray(points_yup, dtype=np.float64)
    drawn = np.column_stack((pts[:, 0] + 0.5, (height - 1) - pts[:, 1] + 0.5))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    if image_bytes is not None:
        data = base64.b64encode(image_bytes).decode("ascii")
        parts.append(
            f'<image href="data:image/{image_type};base64,{data}" x="0" y="0" '
            f'width="{width}" height="{height}" image-rendering="pixelated"/>'
        )
    else:
        parts.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>')
    parts.append(_polyline(drawn, PALETTE[1], 1.0))
    x0, y0 = drawn[0]
    parts.append(f'<circle cx="{_fmt(x0)}" cy="{_fmt(y0)}" r="2" fill="{PALETTE[0]}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def reconstruction_svg(
    efd: EfdSet,
    orders: Sequence[int] = (1, 5, 15, 35),
    samples: int = 512,
    size: int = 480,
) -> str:
    """Overlay of truncated reconstructions, one colour per harmonic order."""
    orders = [n for n in orders if n <= efd.n_harmonics]
    curves = [reconstruct(efd, n_use=n, samples=samples).vertices for n in orders]
    allpts = np.vstack(curves)
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
    margin = 0.08 * span
    scale = size / (span + 2 * margin)

    def to_px(p: np.ndarray) -> np.ndarray:
        x = (p[:, 0] - lo[0] + margin) * scale
        y = size - (p[:, 1] - lo[1] + margin) * scale
        return np.column_stack((x, y))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    for i, (n, curve) in enumerate(zip(orders, curves)):
        parts.append(_polyline(to_px(curve), PALETTE[i % len(PALETTE)], 1.5))
    for i, n in enumerate(orders):
        y = 18 + 16 * i
        color = PALETTE[i % len(PALETTE)]
        parts.append(f'<rect x="10" y="{y - 9}" width="12" height="3" fill="{color}"/>')
        parts.append(f'<text x="28" y="{y - 4}" font-size="12" font-family="sans-serif">n = {n}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def scatter_svg(
    labels: Sequence[str],
    scores: np.ndarray,
    ratios: np.ndarray,
    size: int = 480,
) -> str:
    """PC1 against PC2, coloured by label in order of first appearance."""
    scores = np.asarray(scores, dtype=np.float64)
    xy = scores[:, :2] if scores.shape[1] >= 2 else np.column_stack((scores[:, 0], np.zeros(len(scores))))
    lo = xy.min(axis=0)
    hi = xy.max(axis=0)
    span = np.maximum(hi - lo, 1e-12)
    margin = 0.1
    pad = 36

    def to_px(p):
        u = (p[0] - lo[0]) / span[0]
        v = (p[1] - lo[1]) / span[1]
        x = pad + (u * (1 - 2 * margin) + margin) * (size - 2 * pad)
        y = size - pad - (v * (1 - 2 * margin) + margin) * (size - 2 * pad)
        return x, y

    order: dict[str, int] = {}
    for label in labels:
        if label not in order:
            order[label] = len(order)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
        f'<rect x="{pad}" y="{pad}" width="{size - 2 * pad}" height="{size - 2 * pad}" '
        f'fill="none" stroke="#cccccc"/>',
    ]
    for label, p in zip(labels, xy):
        x, y = to_px(p)
        color = PALETTE[order[label] % len(PALETTE)]
        parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="{color}" fill-opacity="0.8"/>')
    pc1 = f"PC1 ({100 * float(ratios[0]):.1f}%)" if len(ratios) >= 1 else "PC1"
    pc2 = f"PC2 ({100 * float(ratios[1]):.1f}%)" if len(ratios) >= 2 else "PC2"
    parts.append(
        f'<text x="{size // 2}" y="{size - 10}" font-size="12" font-family="sans-serif" '
        f'text-anchor="middle">{pc1}</text>'
    )
    parts.append(
        f'<text x="14" y="{size // 2}" font-size="12" font-family="sans-serif" '
        f'text-anchor="middle" transform="rotate(-90 14 {size // 2})">{pc2}</text>'
    )
    for label, idx in order.items():
        y = pad + 14 + 16 * idx
        color = PALETTE[idx % len(PALETTE)]
        parts.append(f'<circle cx="{pad + 10}" cy="{y - 4}" r="4" fill="{color}"/>')
        parts.append(f'<text x="{pad + 20}" y="{y}" font-size="12" font-family="sans-serif">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
