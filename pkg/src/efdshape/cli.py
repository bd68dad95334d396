"""Batch command line front end.

Subcommands cover the whole pipeline: extract contours from images, compute
descriptors, generate transformed variants, audit invariance, run PCA, render
reconstructions, and measure calibrated size. Exit codes: 0 success, 1 usage
or parse problem, 2 pipeline failure on valid input, 3 internal error.
"""

from __future__ import annotations

import argparse
import glob
import math
import sys
import traceback
from pathlib import Path

import numpy as np

from . import fileio, svgplot
from .contour import Calibration, ChainCode, PolyContour, area, calibrate, chain_to_contour, perimeter
from .efd import DEFAULT_HARMONICS, compute_dc, compute_harmonics
from .errors import (
    BadParameter,
    DegenerateRuler,
    EfdShapeError,
    HarmonicOutOfRange,
    MixedHarmonicCounts,
    ParseError,
)
from .normalize import normalize_classic, normalize_true
from .segment import (
    Raster,
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
from .transforms import KINDS, TransformSpec, apply, format_audit_csv, format_audit_text, invariance_audit, nine_suite
from .analysis import assemble, pca

_USAGE_ERRORS = (ParseError, BadParameter, DegenerateRuler, HarmonicOutOfRange, MixedHarmonicCounts)
MM_PER_INCH = 25.4


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on bad flags; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _expand(patterns) -> list[Path]:
    """Globs expand lexicographically; bare paths must exist."""
    out: list[Path] = []
    for pat in patterns:
        if glob.has_magic(pat):
            hits = sorted(glob.glob(pat))
            if not hits:
                raise ParseError(pat, 1, "no files match this pattern")
            out.extend(Path(h) for h in hits)
        else:
            if not Path(pat).exists():
                raise ParseError(pat, 1, "no such file")
            out.append(Path(pat))
    return out


def _parse_pair(text: str, flag: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise BadParameter(f"{flag} expects 'x,y', got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise BadParameter(f"{flag} expects numbers, got {text!r}") from None


def _parse_ruler(text: str) -> tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise BadParameter(f"--ruler expects 'x1,y1,x2,y2', got {text!r}")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise BadParameter(f"--ruler expects numbers, got {text!r}") from None


def _calibration(args) -> Calibration:
    """--scale wins when given; otherwise ruler endpoints plus physical length."""
    length_mm = None
    if getattr(args, "ruler_mm", None) is not None:
        length_mm = args.ruler_mm * (MM_PER_INCH if args.units == "inch" else 1.0)
    if getattr(args, "scale", None) is not None:
        scale = args.scale * (MM_PER_INCH if args.units == "inch" else 1.0)
        if not (scale > 0 and math.isfinite(scale)):
            raise BadParameter(f"--scale must be positive, got {args.scale}")
        return Calibration(scale)
    if args.ruler is not None:
        if length_mm is None:
            raise BadParameter("--ruler requires --ruler-mm")
        x1, y1, x2, y2 = _parse_ruler(args.ruler)
        return calibrate((x1, y1), (x2, y2), length_mm)
    if length_mm is not None:
        raise BadParameter("--ruler-mm requires --ruler")
    return Calibration(1.0)


def _load_image(path: Path) -> tuple[Raster, bytes | None]:
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(path) as im:
            if im.mode not in ("L", "RGB", "RGBA"):
                im = im.convert("RGB")
            arr = np.asarray(im)
    except (UnidentifiedImageError, OSError) as exc:
        raise ParseError(path, 1, f"cannot read image: {exc}") from None
    raw = path.read_bytes() if path.suffix.lower() == ".png" else None
    return to_grayscale(arr), raw


def _cmd_extract(args) -> int:
    cal = _calibration(args)
    images = _expand(args.images)
    outdir = Path(args.outdir) if args.outdir else None
    status = 0
    for path in images:
        gray, raw = _load_image(path)
        work = gray
        if args.invert:
            work = invert(work)
        for _ in range(args.enhance):
            work = enhance(work)
        if args.edge == "sobel":
            mask = sobel_edges(work, args.edge_threshold)
        else:
            _, mask = otsu_threshold(work)
        if args.erode:
            mask = erode(mask, iterations=args.erode)
        if args.dilate:
            mask = dilate(mask, iterations=args.dilate)
        if args.seed is not None:
            sx, sy = _parse_pair(args.seed, "--seed")
            component = select_component(mask, seed=(int(sx), int(sy)))
        else:
            component = select_component(mask, largest=True)
        chain = mask_to_chain(component)
        if not chain.is_closed:
            dx, dy = chain.deltas().sum(axis=0)
            end = (chain.start[0] + int(dx), chain.start[1] + int(dy))
            print(f"{path}: open contour, trace breaks at pixel {end}", file=sys.stderr)
            status = 2
            continue
        contour = chain_to_contour(chain)
        base = (outdir or path.parent) / f"{path.stem}_{args.label}"
        if outdir:
            outdir.mkdir(parents=True, exist_ok=True)
        fileio.save_boundary(f"{base}_b.txt", contour)
        fileio.save_chain(f"{base}_c.txt", chain)
        info = fileio.build_info_csv([(args.label, area(chain, cal), perimeter(chain, cal), cal.scale)])
        fileio.write_text(f"{base}_info.csv", info)
        svg = svgplot.contour_overlay_svg(gray.pixels.shape[1], gray.pixels.shape[0], contour.vertices, raw)
        fileio.write_text(f"{base}.svg", svg)
        print(f"{path}: wrote {base}_b.txt {base}_c.txt {base}_info.csv {base}.svg")
    return status


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        fileio.write_text(out, text)
    else:
        sys.stdout.write(text)


def _cmd_efd(args) -> int:
    if args.harmonics < 1:
        raise BadParameter(f"--harmonics must be at least 1, got {args.harmonics}")
    paths = _expand(args.inputs)
    efds = []
    reports = []
    for path in paths:
        contour = fileio.load_contour_any(path)
        e = compute_harmonics(contour, args.harmonics)
        if args.normalize == "true":
            e, report = normalize_true(e)
            reports.append(report)
        elif args.normalize == "classic":
            e = normalize_classic(e)
        efds.append(e)
    text = fileio.build_efd_csv(efds, normalized=args.normalize, reports=reports or None)
    _write_or_print(text, args.out)
    return 0


def _cmd_transform(args) -> int:
    paths = _expand([args.input])
    contour = fileio.load_contour_any(paths[0])
    stem = paths[0].stem.removesuffix("_b").removesuffix("_c")
    if args.suite:
        outdir = Path(args.outdir or ".")
        outdir.mkdir(parents=True, exist_ok=True)
        for i, (spec, variant) in enumerate(zip((s for s in _suite_specs(contour)), nine_suite(contour))):
            target = outdir / f"{stem}_t{i}_{spec.kind}_b.txt"
            fileio.save_boundary(target, variant)
            print(f"wrote {target}")
        return 0
    if args.kind is None:
        raise BadParameter("choose --suite or --kind")
    spec = TransformSpec(args.kind, _coerce_parameter(args.kind, args.parameter))
    result = apply(contour, spec)
    if not args.out:
        raise BadParameter("--kind requires --out")
    fileio.save_boundary(args.out, result)
    print(f"wrote {args.out}")
    return 0


def _suite_specs(contour):
    from .transforms import nine_specs

    return nine_specs(contour)


def _coerce_parameter(kind: str, text: str | None):
    if text is None:
        return None
    if kind == "translation":
        return _parse_pair(text, "--parameter")
    if kind in ("anticlockwise_rotation", "scaling_up", "scaling_down"):
        try:
            return float(text)
        except ValueError:
            raise BadParameter(f"--parameter expects a number for {kind}, got {text!r}") from None
    if kind == "start_point_shift":
        try:
            return int(text)
        except ValueError:
            raise BadParameter(f"--parameter expects an integer for {kind}, got {text!r}") from None
    raise BadParameter(f"{kind} takes no parameter")


def _cmd_audit(args) -> int:
    if args.harmonics < 1:
        raise BadParameter(f"--harmonics must be at least 1, got {args.harmonics}")
    paths = _expand([args.input])
    contour = fileio.load_contour_any(paths[0])
    report = invariance_audit(contour, n_harmonics=args.harmonics)
    sys.stdout.write(format_audit_text(report))
    if args.csv:
        fileio.write_text(args.csv, format_audit_csv(report))
    return 0 if report.true_all_pass else 2


def _cmd_pca(args) -> int:
    paths = _expand(args.inputs)
    efds = []
    labels = []
    for path in paths:
        sets, tag = fileio.load_efd_csv(path)
        if tag != "true":
            raise BadParameter(f"{path}: PCA input must be CSV from --normalize true (found normalized={tag})")
        stem = path.stem.removesuffix("_efd")
        efds.extend(sets)
        labels.extend([stem] * len(sets))
    matrix = assemble(efds, labels)
    result = pca(matrix, args.components)
    text = fileio.build_scores_csv(matrix.labels, result.scores, result.explained_variance_ratio)
    _write_or_print(text, args.out)
    if args.svg:
        fileio.write_text(args.svg, svgplot.scatter_svg(matrix.labels, result.scores, result.explained_variance_ratio))
    return 0


def _cmd_render(args) -> int:
    paths = _expand([args.input])
    sets, _ = fileio.load_efd_csv(paths[0])
    if not 0 <= args.row < len(sets):
        raise BadParameter(f"--row {args.row} out of range, file has {len(sets)} rows")
    e = sets[args.row]
    try:
        orders = [int(tok) for tok in args.n.split(",") if tok.strip()]
    except ValueError:
        raise BadParameter(f"--n expects comma-separated integers, got {args.n!r}") from None
    if not orders:
        raise BadParameter("--n lists no orders")
    for n in orders:
        if not 1 <= n <= e.n_harmonics:
            raise BadParameter(f"--n {n} outside stored harmonic range 1..{e.n_harmonics}")
    fileio.write_text(args.out, svgplot.reconstruction_svg(e, orders))
    print(f"wrote {args.out}")
    return 0


def _cmd_measure(args) -> int:
    cal = _calibration(args)
    paths = _expand(args.inputs)
    rows = []
    for path in paths:
        contour = fileio.load_contour_any(path)
        label = args.label or path.stem.removesuffix("_b").removesuffix("_c")
        rows.append((label, area(contour, cal), perimeter(contour, cal), cal.scale))
    _write_or_print(fileio.build_info_csv(rows), args.out)
    return 0


def _add_calibration_flags(p: argparse.ArgumentParser, with_scale: bool) -> None:
    if with_scale:
        p.add_argument("--scale", type=float, default=None, help="calibration in units per pixel")
    p.add_argument("--ruler", default=None, metavar="X1,Y1,X2,Y2", help="ruler endpoints in pixels")
    p.add_argument("--ruler-mm", type=float, default=None, metavar="D", help="physical ruler length in --units")
    p.add_argument("--units", choices=("mm", "inch"), default="mm", help="unit of supplied lengths (default mm)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="efdshape", description="Elliptic Fourier shape analysis toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="segment images and trace closed contours")
    p.add_argument("images", nargs="+", help="image paths or globs (PNG, PGM, PPM)")
    p.add_argument("--invert", action="store_true", help="invert intensities before thresholding")
    p.add_argument("--enhance", type=int, default=0, metavar="N", help="contrast stretch passes")
    p.add_argument("--erode", type=int, default=0, metavar="N", help="erosion passes after thresholding")
    p.add_argument("--dilate", type=int, default=0, metavar="N", help="dilation passes after erosion")
    p.add_argument("--seed", default=None, metavar="X,Y", help="pick the component containing this pixel")
    p.add_argument("--largest", action="store_true", help="pick the largest component (default)")
    p.add_argument("--edge", choices=("sobel",), default=None, help="edge detection instead of Otsu")
    p.add_argument("--edge-threshold", type=float, default=128.0, metavar="T", help="gradient magnitude cut")
    _add_calibration_flags(p, with_scale=False)
    p.add_argument("--label", default="shape", help="tag used in output file names and info rows")
    p.add_argument("--outdir", default=None, help="output directory (default: beside each image)")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("efd", help="compute descriptor CSV from boundary or chain files")
    p.add_argument("inputs", nargs="+", help="boundary (_b.txt) or chain (_c.txt) files or globs")
    p.add_argument("--harmonics", type=int, default=DEFAULT_HARMONICS, metavar="N")
    p.add_argument("--normalize", choices=("true", "classic", "none"), default="none")
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.set_defaults(func=_cmd_efd)

    p = sub.add_parser("transform", help="write transformed copies of a contour")
    p.add_argument("input", help="boundary or chain file")
    p.add_argument("--suite", action="store_true", help="write all nine standard variants")
    p.add_argument("--outdir", default=None, help="directory for --suite output")
    p.add_argument("--kind", choices=KINDS, default=None, help="single transformation to apply")
    p.add_argument("--parameter", default=None, help="transformation parameter where one is needed")
    p.add_argument("--out", default=None, help="output boundary file for --kind")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("audit", help="nine-transformation invariance table")
    p.add_argument("input", help="boundary or chain file")
    p.add_argument("--harmonics", type=int, default=DEFAULT_HARMONICS, metavar="N")
    p.add_argument("--csv", default=None, help="also write the table as CSV")
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("pca", help="principal components of normalized descriptor CSVs")
    p.add_argument("inputs", nargs="+", help="descriptor CSVs written with --normalize true")
    p.add_argument("--components", type=int, default=2, metavar="K")
    p.add_argument("--out", default=None, help="scores CSV path (default stdout)")
    p.add_argument("--svg", default=None, help="optional scatter plot")
    p.set_defaults(func=_cmd_pca)

    p = sub.add_parser("render", help="SVG overlay of truncated reconstructions")
    p.add_argument("input", help="descriptor CSV")
    p.add_argument("--row", type=int, default=0, help="which CSV row to render (default 0)")
    p.add_argument("--n", default="1,5,15,35", help="comma list of harmonic orders")
    p.add_argument("--out", required=True, help="output SVG path")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("measure", help="calibrated area and perimeter table")
    p.add_argument("inputs", nargs="+", help="boundary or chain files or globs")
    _add_calibration_flags(p, with_scale=True)
    p.add_argument("--label", default=None, help="label for info rows (default: file stem)")
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.set_defaults(func=_cmd_measure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0 if code is None else 1
    except _USAGE_ERRORS as exc:
        print(f"efdshape: error: {exc}", file=sys.stderr)
        return 1
    except EfdShapeError as exc:
        print(f"efdshape: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 3


if __name__ == "__main__":
    sys.exit(main())
