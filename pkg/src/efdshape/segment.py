"""Raster image to closed chain code.

Images live in the usual raster frame (row 0 at the top); all functions here
keep that frame, and only border_follow flips to y-up when it emits boundary
points, so everything downstream sees anticlockwise closed contours.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contour import ChainCode, contour_to_chain
from .errors import (
    BadParameter,
    DegenerateBoundary,
    EmptyMask,
    FlatImage,
    MultipleComponents,
    SeedOnBackground,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Raster:
    """Single-channel 8-bit image, row-major."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.array(self.pixels)
        if p.ndim != 2 or p.size == 0:
            raise BadParameter("raster pixels must form a non-empty 2-d grid")
        if p.dtype != np.uint8:
            if not (np.issubdtype(p.dtype, np.integer) and p.min() >= 0 and p.max() <= 255):
                raise BadParameter("raster intensities must be integers in 0..255")
            p = p.astype(np.uint8)
        object.__setattr__(self, "pixels", _frozen(p))

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])


@dataclass(frozen=True, eq=False)
class BinaryMask:
    """Foreground/background grid matching a source raster."""

    bits: np.ndarray

    def __post_init__(self):
        b = np.array(self.bits)
        if b.ndim != 2 or b.size == 0:
            raise BadParameter("mask bits must form a non-empty 2-d grid")
        object.__setattr__(self, "bits", _frozen(b.astype(bool)))

    @property
    def height(self) -> int:
        return int(self.bits.shape[0])

    @property
    def width(self) -> int:
        return int(self.bits.shape[1])

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.bits))


def to_grayscale(source) -> Raster:
    """Luma conversion round(0.299 R + 0.587 G + 0.114 B); grayscale passes through."""
    if isinstance(source, Raster):
        return source
    arr = np.asarray(source)
    if arr.ndim == 2:
        return Raster(arr)
    if arr.ndim == 3 and arr.shape[2] in (3, 4):
        rgb = arr[:, :, :3].astype(float)  # alpha, when present, is ignored
        luma = 0.299 * rgb[:, :, 0] + 0.587 * rgb[:, :, 1] + 0.114 * rgb[:, :, 2]
        return Raster(np.floor(luma + 0.5).astype(np.uint8))
    raise BadParameter("expected an (h, w) or (h, w, 3|4) pixel array")


def invert(r: Raster) -> Raster:
    """255 minus every pixel; applying it twice gives the original back."""
    return Raster(255 - r.pixels)


def enhance(r: Raster) -> Raster:
    """Linear contrast stretch of the 1st..99th percentile span onto 0..255.

    Repeated application keeps stretching whatever span is left; a constant
    image has no span and comes back unchanged.
    """
    lo, hi = np.percentile(r.pixels, (1.0, 99.0))
    if hi <= lo:
        return Raster(r.pixels.copy())
    stretched = (r.pixels.astype(float) - lo) * (255.0 / (hi - lo))
    return Raster(np.floor(np.clip(stretched, 0.0, 255.0) + 0.5).astype(np.uint8))


def otsu_threshold(r: Raster) -> tuple[int, BinaryMask]:
    """Threshold maximizing between-class variance; pixels above it are foreground.

    Ties go to the lowest maximizing threshold so results are reproducible.
    """
    hist = np.bincount(r.pixels.ravel(), minlength=256).astype(float)
    if np.count_nonzero(hist) < 2:
        raise FlatImage("thresholding needs at least two distinct intensities")
    p = hist / hist.sum()
    levels = np.arange(256, dtype=float)
    w0 = np.cumsum(p)
    mu = np.cumsum(p * levels)
    mu_total = mu[-1]
    w1 = 1.0 - w0
    valid = (w0 > 0.0) & (w1 > 0.0)
    score = np.zeros(256)
    score[valid] = (mu_total * w0[valid] - mu[valid]) ** 2 / (w0[valid] * w1[valid])
    k = int(np.argmax(score))  # first occurrence = lowest threshold on ties
    return k, BinaryMask(r.pixels > k)


def _neighborhood_all(bits: np.ndarray) -> np.ndarray:
    h, w = bits.shape
    p = np.pad(bits, 1, constant_values=False)
    out = np.ones_like(bits)
    for dr in range(3):
        for dc in range(3):
            out &= p[dr : dr + h, dc : dc + w]
    return out


def _neighborhood_any(bits: np.ndarray) -> np.ndarray:
    h, w = bits.shape
    p = np.pad(bits, 1, constant_values=False)
    out = np.zeros_like(bits)
    for dr in range(3):
        for dc in range(3):
            out |= p[dr : dr + h, dc : dc + w]
    return out


def erode(m: BinaryMask, iterations: int = 1) -> BinaryMask:
    """Morphological erosion with the full 3x3 element; outside counts as background."""
    if int(iterations) < 1:
        raise BadParameter("iterations must be >= 1")
    bits = m.bits
    for _ in range(int(iterations)):
        bits = _neighborhood_all(bits)
    return BinaryMask(bits)


def dilate(m: BinaryMask, iterations: int = 1) -> BinaryMask:
    """Morphological dilation with the full 3x3 element."""
    if int(iterations) < 1:
        raise BadParameter("iterations must be >= 1")
    bits = m.bits
    for _ in range(int(iterations)):
        bits = _neighborhood_any(bits)
    return BinaryMask(bits)


def _label_components(bits: np.ndarray) -> tuple[np.ndarray, int]:
    """8-connected labels, assigned in row-major scan order starting at 1."""
    labels = np.zeros(bits.shape, dtype=np.int64)
    remaining = bits.copy()
    count = 0
    while remaining.any():
        count += 1
        rs, cs = np.nonzero(remaining)
        frontier = np.zeros_like(bits)
        frontier[rs[0], cs[0]] = True
        component = frontier.copy()
        while True:
            grow = _neighborhood_any(frontier) & bits & ~component
            if not grow.any():
                break
            component |= grow
            frontier = grow
        labels[component] = count
        remaining &= ~component
    return labels, count


def select_component(m: BinaryMask, seed: tuple[int, int] | None = None, largest: bool = False) -> BinaryMask:
    """Keep one 8-connected component: the one under seed, or the largest.

    ``seed`` is (x, y) in the raster frame (x = column, y = row from the
    top). Exactly one of the two selectors must be chosen. Size ties go to
    the component found first in scan order.
    """
    if (seed is None) == (not largest):
        raise BadParameter("choose exactly one of seed or largest")
    if not m.bits.any():
        raise EmptyMask("mask has no foreground pixels")
    labels, count = _label_components(m.bits)
    if seed is not None:
        x, y = int(seed[0]), int(seed[1])
        if not (0 <= y < m.height and 0 <= x < m.width) or not m.bits[y, x]:
            raise SeedOnBackground(f"seed ({x}, {y}) is not on the foreground")
        want = labels[y, x]
    else:
        sizes = np.bincount(labels.ravel(), minlength=count + 1)
        sizes[0] = 0
        want = int(np.argmax(sizes))
    return BinaryMask(labels == want)


# Moore neighborhood in (row, col) offsets, anticlockwise for y-up output
_RING = ((-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1))
_RING_INDEX = {off: i for i, off in enumerate(_RING)}


def border_follow(m: BinaryMask) -> list[tuple[int, int]]:
    """Ordered outer-boundary pixels of the single component, as y-up (x, y) pairs.

    Moore neighbor tracing from the topmost-leftmost pixel, walking until the
    first transition state recurs, so one-pixel-wide necks are traversed from
    both sides instead of cutting the cycle short. The emitted loop is
    anticlockwise in y-up coordinates and every consecutive pair (cyclically)
    is 8-adjacent.
    """
    bits = m.bits
    if not bits.any():
        raise EmptyMask("mask has no foreground pixels")
    _, count = _label_components(bits)
    if count != 1:
        raise MultipleComponents(f"mask has {count} components; select one first")
    h, w = bits.shape
    rows, cols = np.nonzero(bits)
    first = np.lexsort((cols, rows))[0]
    start = (int(rows[first]), int(cols[first]))

    def is_fg(p):
        return 0 <= p[0] < h and 0 <= p[1] < w and bits[p]

    def step(cur, back):
        j0 = _RING_INDEX[(back[0] - cur[0], back[1] - cur[1])]
        for k in range(1, 9):
            j = (j0 + k) % 8
            cand = (cur[0] + _RING[j][0], cur[1] + _RING[j][1])
            if is_fg(cand):
                prev = (j - 1) % 8
                return cand, (cur[0] + _RING[prev][0], cur[1] + _RING[prev][1])
        return None, None

    back0 = (start[0] - 1, start[1])
    first_pt, first_back = step(start, back0)
    if first_pt is None:
        boundary = [start]
    else:
        boundary = [start]
        cur, back = first_pt, first_back
        while True:
            if cur == start:
                nxt, nb = step(cur, back)
                if (nxt, nb) == (first_pt, first_back):
                    break
                boundary.append(cur)
                cur, back = nxt, nb
                continue
            boundary.append(cur)
            cur, back = step(cur, back)
    return [(c, (h - 1) - r) for r, c in boundary]


def mask_to_chain(m: BinaryMask) -> ChainCode:
    """Boundary of the mask's single component as a closed chain code."""
    points = border_follow(m)
    if len(points) < 8:
        raise DegenerateBoundary(
            f"boundary of {len(points)} pixels starting at {points[0]} is too short for a usable chain"
        )
    return contour_to_chain(points)


def sobel_edges(r: Raster, threshold: float) -> BinaryMask:
    """Gradient-magnitude edges; lowering the threshold reveals more detail.

    Border pixels are handled by edge replication so a constant image stays
    gradient-free everywhere.
    """
    if threshold < 0:
        raise BadParameter("threshold must be >= 0")
    h, w = r.pixels.shape
    p = np.pad(r.pixels.astype(float), 1, mode="edge")

    def sub(dr, dc):
        return p[1 + dr : 1 + dr + h, 1 + dc : 1 + dc + w]

    gx = (sub(-1, 1) + 2.0 * sub(0, 1) + sub(1, 1)) - (sub(-1, -1) + 2.0 * sub(0, -1) + sub(1, -1))
    gy = (sub(1, -1) + 2.0 * sub(1, 0) + sub(1, 1)) - (sub(-1, -1) + 2.0 * sub(-1, 0) + sub(-1, 1))
    return BinaryMask(np.hypot(gx, gy) > threshold)
