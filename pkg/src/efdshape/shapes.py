"""Built-in synthetic closed shapes: the audit corpus and a few fixtures."""

from __future__ import annotations

import numpy as np

from .contour import ChainCode, PolyContour, chain_to_contour

TAU = 2.0 * np.pi


def square_chain() -> ChainCode:
    """Unit square as the 4-link chain code 0246."""
    return ChainCode("0246")


def octagon_chain() -> ChainCode:
    """The 8-link chain running through every direction once."""
    return ChainCode("01234567")


def square() -> PolyContour:
    return chain_to_contour(square_chain())


def octagon(radius: float = 1.0) -> PolyContour:
    """Regular octagon; its exact 8-fold symmetry exercises the degenerate axis path."""
    th = np.arange(8) * (np.pi / 4.0)
    return PolyContour(radius * np.stack([np.cos(th), np.sin(th)], axis=1))


def ellipse(n: int = 360, a: float = 2.0, b: float = 1.0) -> PolyContour:
    th = np.arange(n) * (TAU / n)
    return PolyContour(np.stack([a * np.cos(th), b * np.sin(th)], axis=1))


def circle(n: int = 360, radius: float = 1.0) -> PolyContour:
    th = np.arange(n) * (TAU / n)
    return PolyContour(radius * np.stack([np.cos(th), np.sin(th)], axis=1))


def leaf(n: int = 540) -> PolyContour:
    """Elongated five-lobed outline; the stretch breaks the lobes' rotational symmetry."""
    th = np.arange(n) * (TAU / n)
    r = 1.0 + 0.26 * np.cos(5 * th)
    return PolyContour(np.stack([1.7 * r * np.cos(th), r * np.sin(th)], axis=1))


def blob(n: int = 420) -> PolyContour:
    """Smooth star-free asymmetric outline with no mirror or rotational symmetry."""
    th = np.arange(n) * (TAU / n)
    r = (
        1.0
        + 0.21 * np.cos(2 * th + 0.7)
        + 0.13 * np.sin(3 * th)
        + 0.08 * np.cos(5 * th - 1.2)
        + 0.05 * np.sin(7 * th + 0.3)
    )
    return PolyContour(np.stack([r * np.cos(th), r * np.sin(th)], axis=1))


def turtle() -> PolyContour:
    """Concave asymmetric 13-gon."""
    return PolyContour(
        np.array(
            [
                [0.0, 0.0],
                [4.0, 0.0],
                [5.0, 1.0],
                [7.0, 1.0],
                [7.0, 2.5],
                [5.0, 2.2],
                [4.4, 3.2],
                [3.2, 3.4],
                [1.6, 3.1],
                [0.4, 2.2],
                [-0.8, 2.4],
                [-1.4, 1.6],
                [-0.4, 1.2],
            ]
        )
    )


def corpus() -> dict[str, PolyContour]:
    """The six audit shapes in a stable order."""
    return {
        "square": square(),
        "octagon": octagon(),
        "ellipse": ellipse(),
        "leaf": leaf(),
        "blob": blob(),
        "turtle": turtle(),
    }
