"""Elliptic Fourier shape analysis: contours, descriptors, normalization, PCA."""

from .contour import (
    Calibration,
    ChainCode,
    PolyContour,
    area,
    calibrate,
    chain_to_contour,
    contour_to_chain,
    perimeter,
)
from .efd import DEFAULT_HARMONICS, EfdSet, compute_dc, compute_harmonics, reconstruct
from .errors import (
    BadParameter,
    DegenerateBoundary,
    DegenerateFirstHarmonic,
    DegenerateRuler,
    EfdShapeError,
    EmptyMask,
    FlatImage,
    HarmonicOutOfRange,
    MixedHarmonicCounts,
    MultipleComponents,
    NotAdjacent,
    NotClosed,
    ParseError,
    SeedOnBackground,
)
from .normalize import (
    NormalizationReport,
    major_axis,
    normalize_classic,
    normalize_true,
    orientation,
    reflect_x,
    reverse_direction,
    rotate_coeffs,
    shift_start,
)
from .transforms import (
    KINDS,
    PASS_TOL,
    AuditReport,
    AuditRow,
    TransformSpec,
    apply,
    format_audit_csv,
    format_audit_text,
    invariance_audit,
    nine_specs,
    nine_suite,
    rotate_links,
)
from .segment import (
    BinaryMask,
    Raster,
    border_follow,
    dilate,
    enhance,
    erode,
    invert,
    mask_to_chain,
    otsu_threshold,
    select_component,
    sobel_edges,
    to_grayscale,
)
from .analysis import FeatureMatrix, PcaResult, assemble, pca
from . import shapes

__version__ = "0.1.0"

__all__ = [
    "Calibration",
    "ChainCode",
    "PolyContour",
    "area",
    "calibrate",
    "chain_to_contour",
    "contour_to_chain",
    "perimeter",
    "DEFAULT_HARMONICS",
    "EfdSet",
    "compute_dc",
    "compute_harmonics",
    "reconstruct",
    "BadParameter",
    "DegenerateBoundary",
    "DegenerateFirstHarmonic",
    "DegenerateRuler",
    "EfdShapeError",
    "EmptyMask",
    "FlatImage",
    "HarmonicOutOfRange",
    "MixedHarmonicCounts",
    "MultipleComponents",
    "NotAdjacent",
    "NotClosed",
    "ParseError",
    "SeedOnBackground",
    "NormalizationReport",
    "major_axis",
    "normalize_classic",
    "normalize_true",
    "orientation",
    "reflect_x",
    "reverse_direction",
    "rotate_coeffs",
    "shift_start",
    "KINDS",
    "PASS_TOL",
    "AuditReport",
    "AuditRow",
    "TransformSpec",
    "apply",
    "format_audit_csv",
    "format_audit_text",
    "invariance_audit",
    "nine_specs",
    "nine_suite",
    "rotate_links",
    "BinaryMask",
    "Raster",
    "border_follow",
    "dilate",
    "enhance",
    "erode",
    "invert",
    "mask_to_chain",
    "otsu_threshold",
    "select_component",
    "sobel_edges",
    "to_grayscale",
    "FeatureMatrix",
    "PcaResult",
    "assemble",
    "pca",
    "shapes",
    "__version__",
]
