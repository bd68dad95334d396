"""Elliptic Fourier descriptors of closed contours.

Coefficients come from the closed-form segment sums of the piecewise-linear
parametrization (no numerical quadrature), with cumulative phases computed in
one pass so the per-harmonic work is a handful of vectorized operations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contour import ChainCode, Contour, PolyContour
from .errors import BadParameter, HarmonicOutOfRange, NotClosed

DEFAULT_HARMONICS = 35

TAU = 2.0 * np.pi


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class EfdSet:
    """DC pair plus one (a_n, b_n, c_n, d_n) row per harmonic, n starting at 1."""

    a0: float
    c0: float
    harmonics: np.ndarray

    def __post_init__(self):
        h = np.array(self.harmonics, dtype=float)
        if h.ndim != 2 or h.shape[1] != 4 or h.shape[0] < 1:
            raise BadParameter("harmonics must form an (n, 4) array with n >= 1")
        if not (np.isfinite(h).all() and np.isfinite(self.a0) and np.isfinite(self.c0)):
            raise BadParameter("descriptor coefficients must be finite")
        object.__setattr__(self, "harmonics", _frozen(h))
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "c0", float(self.c0))

    @property
    def n_harmonics(self) -> int:
        return int(self.harmonics.shape[0])

    def coeffs(self, n: int) -> tuple[float, float, float, float]:
        """The (a_n, b_n, c_n, d_n) quadruple for 1-based harmonic n."""
        if not 1 <= n <= self.n_harmonics:
            raise HarmonicOutOfRange(f"harmonic {n} outside 1..{self.n_harmonics}")
        return tuple(float(x) for x in self.harmonics[n - 1])

    def matrices(self) -> np.ndarray:
        """Harmonics as (n, 2, 2) matrices [[a, b], [c, d]] (a fresh copy)."""
        return self.harmonics.reshape(-1, 2, 2).copy()

    def flattened(self) -> np.ndarray:
        """(a0, c0, a1, b1, c1, d1, ...) as one vector."""
        return np.concatenate([[self.a0, self.c0], self.harmonics.ravel()])


def _traversal(c: Contour):
    """Per-segment times, total period, and x/y waypoints including the closing point."""
    if isinstance(c, ChainCode):
        if not c.is_closed:
            raise NotClosed("descriptors are defined for closed contours only")
        d = c.deltas().astype(float)
        dt = c.link_times()
        total = c.total_time
        x0, y0 = float(c.start[0]), float(c.start[1])
    elif isinstance(c, PolyContour):
        d = c.segments()
        dt = c.segment_times()
        total = float(dt.sum())
        x0, y0 = float(c.vertices[0, 0]), float(c.vertices[0, 1])
    else:
        raise BadParameter(f"expected a ChainCode or PolyContour, got {type(c).__name__}")
    k = len(dt)
    x = np.empty(k + 1)
    y = np.empty(k + 1)
    x[0], y[0] = x0, y0
    np.cumsum(d[:, 0], out=x[1:])
    np.cumsum(d[:, 1], out=y[1:])
    x[1:] += x0
    y[1:] += y0
    return dt, total, x, y


def compute_dc(c: Contour) -> tuple[float, float]:
    """Time-averaged position of the traversal (the translation carrier)."""
    dt, total, x, y = _traversal(c)
    a0 = float(np.dot(x[1:] + x[:-1], dt)) / (2.0 * total)
    c0 = float(np.dot(y[1:] + y[:-1], dt)) / (2.0 * total)
    return a0, c0


def compute_harmonics(c: Contour, n_harmonics: int = DEFAULT_HARMONICS) -> EfdSet:
    """Descriptor set of a closed contour, DC included."""
    n_harmonics = int(n_harmonics)
    if n_harmonics < 1:
        raise BadParameter("need at least one harmonic")
    dt, total, x, y = _traversal(c)
    a0 = float(np.dot(x[1:] + x[:-1], dt)) / (2.0 * total)
    c0 = float(np.dot(y[1:] + y[:-1], dt)) / (2.0 * total)

    phi = np.empty(len(dt) + 1)
    phi[0] = 0.0
    np.cumsum(dt, out=phi[1:])
    phi *= TAU / total
    vx = np.diff(x) / dt
    vy = np.diff(y) / dt

    out = np.empty((n_harmonics, 4))
    for n in range(1, n_harmonics + 1):
        cn = np.cos(n * phi)
        sn = np.sin(n * phi)
        dcos = np.diff(cn)
        dsin = np.diff(sn)
        k = total / (2.0 * n * n * np.pi * np.pi)
        out[n - 1, 0] = k * np.dot(vx, dcos)
        out[n - 1, 1] = k * np.dot(vx, dsin)
        out[n - 1, 2] = k * np.dot(vy, dcos)
        out[n - 1, 3] = k * np.dot(vy, dsin)
    return EfdSet(a0, c0, out)


def reconstruct(e: EfdSet, n_use: int | None = None, samples: int = 1024) -> PolyContour:
    """Sample the truncated series over one period (the period itself drops out)."""
    if n_use is None:
        n_use = e.n_harmonics
    if not 1 <= n_use <= e.n_harmonics:
        raise HarmonicOutOfRange(f"n_use {n_use} outside 1..{e.n_harmonics}")
    if samples < 8:
        raise BadParameter("need at least 8 samples")
    t = np.arange(samples) / float(samples)
    n = np.arange(1, n_use + 1)[:, None]
    ang = TAU * n * t[None, :]
    cos = np.cos(ang)
    sin = np.sin(ang)
    h = e.harmonics[:n_use]
    x = e.a0 + h[:, 0] @ cos + h[:, 1] @ sin
    y = e.c0 + h[:, 2] @ cos + h[:, 3] @ sin
    return PolyContour(np.stack([x, y], axis=1))
