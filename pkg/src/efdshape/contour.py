"""Chain-code and polygonal representations of closed contours.

Coordinates are mathematical y-up throughout the library; raster input is
flipped once, when boundary pixels are emitted. Chain links follow the
8-direction convention with 0 along +x and directions advancing
anticlockwise, so odd links are the sqrt(2)-long diagonals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import (
    BadParameter,
    DegenerateBoundary,
    DegenerateRuler,
    NotAdjacent,
    NotClosed,
)

SQRT2 = float(np.sqrt(2.0))

# link index -> (dx, dy)
LINK_DX = np.array([1, 1, 0, -1, -1, -1, 0, 1], dtype=np.int64)
LINK_DY = np.array([0, 1, 1, 1, 0, -1, -1, -1], dtype=np.int64)

# (dx + 1, dy + 1) -> link index, -1 where the displacement is not a link
_STEP_TO_LINK = -np.ones((3, 3), dtype=np.int64)
for _k in range(8):
    _STEP_TO_LINK[LINK_DX[_k] + 1, LINK_DY[_k] + 1] = _k


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class ChainCode:
    """Freeman chain: a sequence of direction links plus an integer start point.

    ``links`` may be given as a digit string like ``"0246"`` or as any
    integer sequence; it is stored as a read-only integer array.
    """

    links: np.ndarray
    start: tuple[int, int] = (0, 0)

    def __post_init__(self):
        raw = self.links
        if isinstance(raw, str):
            try:
                arr = np.frombuffer(raw.encode("ascii"), dtype=np.uint8).astype(np.int64) - ord("0")
            except UnicodeEncodeError:
                raise BadParameter("chain string may only contain digits 0-7") from None
        else:
            arr = np.asarray(raw)
            if arr.dtype.kind not in "iu":
                raise BadParameter("chain links must be integers 0-7")
            arr = arr.astype(np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise BadParameter("a chain code needs at least one link")
        if arr.min() < 0 or arr.max() > 7:
            raise BadParameter("chain links must be directions 0-7")
        object.__setattr__(self, "links", _frozen(arr))
        sx, sy = self.start
        object.__setattr__(self, "start", (int(sx), int(sy)))

    def __len__(self) -> int:
        return int(self.links.size)

    def __str__(self) -> str:
        return "".join(chr(ord("0") + k) for k in self.links)

    def deltas(self) -> np.ndarray:
        """Per-link displacements, shape (n_links, 2)."""
        return np.stack([LINK_DX[self.links], LINK_DY[self.links]], axis=1)

    def link_times(self) -> np.ndarray:
        """Traversal time of each link: 1 for even directions, sqrt(2) for odd."""
        return np.where(self.links % 2 == 0, 1.0, SQRT2)

    @property
    def total_time(self) -> float:
        # computed from link counts so the value is exact up to one multiply
        n_odd = int(np.count_nonzero(self.links % 2))
        return (len(self) - n_odd) + SQRT2 * n_odd

    @property
    def is_closed(self) -> bool:
        d = self.deltas()
        return int(d[:, 0].sum()) == 0 and int(d[:, 1].sum()) == 0


@dataclass(frozen=True, eq=False)
class PolyContour:
    """Closed piecewise-linear contour; the last vertex connects back to the first."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise BadParameter("vertices must form an (n, 2) array")
        if not np.isfinite(v).all():
            raise BadParameter("vertices must be finite")
        if len(v) < 3:
            raise DegenerateBoundary("a closed contour needs at least 3 vertices")
        dup = np.all(np.roll(v, -1, axis=0) == v, axis=1)
        if dup.any():
            i = int(np.argmax(dup))
            raise DegenerateBoundary(f"zero-length segment at vertex {i}")
        object.__setattr__(self, "vertices", _frozen(v))

    def __len__(self) -> int:
        return int(len(self.vertices))

    def segments(self) -> np.ndarray:
        """Vertex-to-next-vertex displacements including the closing segment."""
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def segment_times(self) -> np.ndarray:
        d = self.segments()
        return np.hypot(d[:, 0], d[:, 1])

    @property
    def total_time(self) -> float:
        return float(self.segment_times().sum())


Contour = Union[ChainCode, PolyContour]


def chain_to_contour(code: ChainCode) -> PolyContour:
    """Walk a closed chain code into its vertex polygon (closing vertex implicit)."""
    if not code.is_closed:
        d = code.deltas().sum(axis=0)
        raise NotClosed(f"chain displacements sum to ({d[0]}, {d[1]}), not (0, 0)")
    d = code.deltas()
    v = np.empty((len(code), 2), dtype=float)
    v[0] = code.start
    v[1:] = np.asarray(code.start, dtype=float) + np.cumsum(d[:-1], axis=0)
    return PolyContour(v)


def contour_to_chain(points) -> ChainCode:
    """Encode a cyclic sequence of integer 8-neighbor pixels as a chain code.

    Accepts a PolyContour with integer vertices or any (n, 2) point sequence.
    Raises NotAdjacent with the failing 1-based step index when the boundary
    is broken.
    """
    pts = points.vertices if isinstance(points, PolyContour) else np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise BadParameter("points must form an (n, 2) sequence with n >= 2")
    ints = np.rint(pts)
    if np.any(pts != ints):
        raise BadParameter("chain pixels must have integer coordinates")
    ints = ints.astype(np.int64)
    step = np.roll(ints, -1, axis=0) - ints
    inside = (np.abs(step) <= 1).all(axis=1)
    clipped = np.clip(step, -1, 1) + 1
    links = np.where(inside, _STEP_TO_LINK[clipped[:, 0], clipped[:, 1]], -1)
    if np.any(links < 0):
        i = int(np.argmax(links < 0))
        frm, to = ints[i], ints[(i + 1) % len(ints)]
        raise NotAdjacent(
            i + 1,
            f"step {i + 1} from ({frm[0]}, {frm[1]}) to ({to[0]}, {to[1]}) is not an 8-neighbor move",
        )
    return ChainCode(links, start=(int(ints[0, 0]), int(ints[0, 1])))


@dataclass(frozen=True)
class Calibration:
    """Pixel-to-millimeter scale factor."""

    scale: float = 1.0

    def __post_init__(self):
        s = float(self.scale)
        if not (np.isfinite(s) and s > 0):
            raise BadParameter("calibration scale must be a positive number")
        object.__setattr__(self, "scale", s)


def calibrate(p1: Sequence[float], p2: Sequence[float], distance_mm: float) -> Calibration:
    """Scale from two reference points a known real distance apart."""
    dx = float(p2[0]) - float(p1[0])
    dy = float(p2[1]) - float(p1[1])
    d = float(np.hypot(dx, dy))
    if d == 0.0 or not distance_mm > 0:
        raise DegenerateRuler("ruler points must differ and the distance must be positive")
    return Calibration(distance_mm / d)


def perimeter(c: Contour, cal: Calibration | None = None) -> float:
    """Traversal length in millimeters (pixels when no calibration is given)."""
    scale = 1.0 if cal is None else cal.scale
    if isinstance(c, ChainCode):
        if not c.is_closed:
            raise NotClosed("perimeter is defined for closed chains only")
        return c.total_time * scale
    return c.total_time * scale


def area(c: Contour, cal: Calibration | None = None) -> float:
    """Absolute shoelace area in square millimeters; orientation independent."""
    if isinstance(c, ChainCode):
        c = chain_to_contour(c)
    scale = 1.0 if cal is None else cal.scale
    v = c.vertices
    w = np.roll(v, -1, axis=0)
    shoelace = 0.5 * (float(np.dot(v[:, 0], w[:, 1])) - float(np.dot(v[:, 1], w[:, 0])))
    return abs(shoelace) * scale * scale
