"""Coefficient-space symmetry actions and canonical descriptor normalization.

Harmonic n is handled as the 2x2 matrix H_n = [[a_n, b_n], [c_n, d_n]].
Plane rotations act on the left of every H_n, start-point shifts act on the
right with harmonic n picking up n times the phase, and that little algebra
is all the canonicalization needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .efd import EfdSet, TAU
from .errors import DegenerateFirstHarmonic

# relative floor under which the first-harmonic quantities count as zero
_DEGENERACY_TOL = 1e-12

ANTICLOCKWISE = "anticlockwise"
CLOCKWISE = "clockwise"


@dataclass(frozen=True)
class NormalizationReport:
    """Diagnostics of normalize_true: orientation test, axis solve, applied moves."""

    omega: float
    theta_t: float
    theta_star: float
    major_len: float
    reversed: bool
    start_shift: float
    rotation: float
    halfshift_applied: bool
    reflection_applied: bool


def _rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def _left_rotate(h: np.ndarray, phi: float) -> np.ndarray:
    return np.einsum("ij,njk->nik", _rotation(phi), h)


def _right_shift(h: np.ndarray, s: float) -> np.ndarray:
    n = np.arange(1, len(h) + 1)
    ang = TAU * n * s
    c, sn = np.cos(ang), np.sin(ang)
    r = np.empty((len(h), 2, 2))
    r[:, 0, 0] = c
    r[:, 0, 1] = -sn
    r[:, 1, 0] = sn
    r[:, 1, 1] = c
    return np.einsum("nij,njk->nik", h, r)


def rotate_coeffs(e: EfdSet, phi: float) -> EfdSet:
    """Rotate the described curve by phi about the origin; the DC pair rotates too."""
    h = _left_rotate(e.matrices(), phi)
    dc = _rotation(phi) @ np.array([e.a0, e.c0])
    return EfdSet(float(dc[0]), float(dc[1]), h.reshape(-1, 4))


def shift_start(e: EfdSet, s: float) -> EfdSet:
    """Move the starting point by the period fraction s (t -> t + s*T)."""
    h = _right_shift(e.matrices(), s)
    return EfdSet(e.a0, e.c0, h.reshape(-1, 4))


def reverse_direction(e: EfdSet) -> EfdSet:
    """Traverse the curve the opposite way (t -> -t).

    Negates the sine columns b_n and d_n, which flips the sign of the
    orientation product a1*d1 - c1*b1 as a direction change must.
    """
    h = e.harmonics.copy()
    h[:, 1] *= -1.0
    h[:, 3] *= -1.0
    return EfdSet(e.a0, e.c0, h)


def reflect_x(e: EfdSet) -> EfdSet:
    """Mirror across the x axis: y -> -y, so c_n, d_n and the DC y flip sign."""
    h = e.harmonics.copy()
    h[:, 2] *= -1.0
    h[:, 3] *= -1.0
    return EfdSet(e.a0, -e.c0, h)


def _omega(e: EfdSet) -> tuple[float, float]:
    a, b, c, d = (float(v) for v in e.harmonics[0])
    return a * d - c * b, a * a + b * b + c * c + d * d


def orientation(e: EfdSet) -> str:
    """Traversal direction from the sign of a1*d1 - c1*b1."""
    omega, s2 = _omega(e)
    if abs(omega) <= _DEGENERACY_TOL * s2:
        raise DegenerateFirstHarmonic("first-order ellipse collapses to a segment")
    return ANTICLOCKWISE if omega > 0 else CLOCKWISE


def _first_order_distance(a, b, c, d, theta):
    val = (
        (a * a + c * c) * math.cos(theta) ** 2
        + (a * b + c * d) * math.sin(2.0 * theta)
        + (b * b + d * d) * math.sin(theta) ** 2
    )
    return math.sqrt(max(val, 0.0))


def _axis_solve(a, b, c, d):
    """Parameter angle and length of the first-order ellipse's major axis.

    The extremal parameter comes from a signed two-argument arctangent; a
    magnitude-only quotient would fold all solutions into one quadrant and
    miss the axis whenever the cross term and the difference disagree in
    sign. When both terms are negligible the ellipse is circular, every
    angle is extremal, and 0 is the deterministic pick.
    """
    num = 2.0 * (a * b + c * d)
    den = a * a + c * c - b * b - d * d
    s2 = a * a + b * b + c * c + d * d
    if max(abs(num), abs(den)) <= _DEGENERACY_TOL * s2:
        theta_t = 0.0
    else:
        theta_t = 0.5 * math.atan2(num, den)
    d_here = _first_order_distance(a, b, c, d, theta_t)
    d_perp = _first_order_distance(a, b, c, d, theta_t + 0.5 * math.pi)
    theta_star = theta_t if d_here >= d_perp else theta_t + 0.5 * math.pi
    return theta_t, theta_star, max(d_here, d_perp)


def major_axis(e: EfdSet) -> tuple[float, float, float]:
    """(theta_t, theta_star, major_len) of the first-order ellipse.

    theta_t and theta_star are parameter angles along the first-order
    ellipse, not plane angles; the curve point at parameter theta_star is
    the major-axis endpoint and sits major_len from the center.
    """
    a, b, c, d = (float(v) for v in e.harmonics[0])
    if a == b == c == d == 0.0:
        raise DegenerateFirstHarmonic("first harmonic is zero")
    return _axis_solve(a, b, c, d)


def _halfshift(h: np.ndarray) -> np.ndarray:
    sign = np.where(np.arange(1, len(h) + 1) % 2 == 1, 1.0, -1.0)
    return h * sign[:, None, None]


def _reflect_reverse(h: np.ndarray) -> np.ndarray:
    out = h.copy()
    out[:, 0, 1] *= -1.0
    out[:, 1, 0] *= -1.0
    return out


def _lex_less(u: np.ndarray, v: np.ndarray, tol: float = 1e-12) -> bool:
    for x, y in zip(u, v):
        if x < y - tol:
            return True
        if x > y + tol:
            return False
    return False


def normalize_true(e: EfdSet) -> tuple[EfdSet, NormalizationReport]:
    """Canonical form invariant under translation, scale, rotation, starting
    point, traversal reversal, and axis mirroring.

    Pipeline: zero the DC; force anticlockwise heading; scale by the
    first-order major-axis length; rotate the major-axis endpoint onto the
    positive x axis; shift the start onto that endpoint; then settle the
    four leftover symmetries (opposite endpoint, mirror-plus-reversal, and
    their product, all of which fix the first harmonic) by picking the
    candidate whose coefficients from harmonic 2 on are lexicographically
    largest. The result satisfies a1 = 1, b1 = c1 = 0, 0 <= d1 <= 1.
    """
    h = e.matrices()
    a, b, c, d = h[0].ravel()
    omega = a * d - c * b
    s2 = a * a + b * b + c * c + d * d
    if abs(omega) <= _DEGENERACY_TOL * s2:
        raise DegenerateFirstHarmonic("first-order ellipse collapses to a segment")
    rev = bool(omega < 0)
    if rev:
        h[:, :, 1] *= -1.0

    a, b, c, d = h[0].ravel()
    theta_t, theta_star, major_len = _axis_solve(a, b, c, d)
    endpoint = h[0] @ np.array([math.cos(theta_star), math.sin(theta_star)])
    # the plane rotation must use the endpoint's geometric angle; the
    # parameter angle theta_star lives on the ellipse's own clock and only
    # coincides with it for circles
    alpha = math.atan2(endpoint[1], endpoint[0])

    h /= major_len
    h = _left_rotate(h, -alpha)
    s_star = math.atan2(h[0, 0, 1], h[0, 0, 0]) / TAU
    h = _right_shift(h, s_star)

    candidates = (h, _halfshift(h), _reflect_reverse(h), _halfshift(_reflect_reverse(h)))
    best = 0
    for i in range(1, 4):
        if _lex_less(candidates[best][1:].ravel(), candidates[i][1:].ravel()):
            best = i

    report = NormalizationReport(
        omega=float(omega),
        theta_t=float(theta_t),
        theta_star=float(theta_star),
        major_len=float(major_len),
        reversed=rev,
        start_shift=float(s_star),
        rotation=float(-alpha),
        halfshift_applied=best in (1, 3),
        reflection_applied=best in (2, 3),
    )
    return EfdSet(0.0, 0.0, candidates[best].reshape(-1, 4)), report


def normalize_classic(e: EfdSet) -> EfdSet:
    """Size, rotation, translation, and starting-point normalization only.

    The long-standing baseline scheme: no orientation, reflection, or
    symmetry handling, so mirrored or reversed traversals keep distinct
    descriptors. Kept as the comparison arm of the invariance audit.
    """
    a, b, c, d = (float(v) for v in e.harmonics[0])
    s2 = a * a + b * b + c * c + d * d
    if s2 == 0.0:
        raise DegenerateFirstHarmonic("first harmonic is zero")
    num = 2.0 * (a * b + c * d)
    den = a * a + c * c - b * b - d * d
    if max(abs(num), abs(den)) <= _DEGENERACY_TOL * s2:
        theta1 = 0.0
    else:
        theta1 = 0.5 * math.atan2(num, den)
    h = _right_shift(e.matrices(), theta1 / TAU)
    psi = math.atan2(h[0, 1, 0], h[0, 0, 0])
    h = _left_rotate(h, -psi)
    h /= h[0, 0, 0]
    return EfdSet(0.0, 0.0, h.reshape(-1, 4))
