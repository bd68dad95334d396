"""Exception types shared across the package."""


class EfdShapeError(Exception):
    """Base class for every error this library raises on purpose."""


class NotClosed(EfdShapeError):
    """Chain-code displacements do not sum to zero."""


class NotAdjacent(EfdShapeError):
    """Consecutive boundary points are not 8-neighbors.

    ``index`` is the 1-based step number: step ``p`` goes from point ``p - 1``
    to point ``p``, and the closing step from the last point back to the first
    carries index ``n_points``.
    """

    def __init__(self, index: int, message: str | None = None):
        self.index = int(index)
        super().__init__(message or f"points at step {index} are not 8-adjacent")


class DegenerateRuler(EfdShapeError):
    """Calibration points coincide or the reference distance is not positive."""


class HarmonicOutOfRange(EfdShapeError):
    """Requested harmonic order outside the stored range."""


class DegenerateFirstHarmonic(EfdShapeError):
    """The first-order ellipse collapses to a segment or a point."""


class BadParameter(EfdShapeError):
    """A parameter value is outside its documented domain."""


class FlatImage(EfdShapeError):
    """Thresholding needs at least two distinct intensities."""


class SeedOnBackground(EfdShapeError):
    """Component seed pixel does not lie on the foreground."""


class EmptyMask(EfdShapeError):
    """No foreground pixels to work with."""


class MultipleComponents(EfdShapeError):
    """Border following expects a single connected component."""


class DegenerateBoundary(EfdShapeError):
    """Boundary too short to carry a usable chain code."""


class MixedHarmonicCounts(EfdShapeError):
    """Descriptor sets with different harmonic counts cannot be combined."""


class ParseError(EfdShapeError):
    """A text input file does not match its format."""

    def __init__(self, path, line: int, message: str):
        self.path = str(path)
        self.line = int(line)
        super().__init__(f"{path}:{line}: {message}")
