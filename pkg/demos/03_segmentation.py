"""Image to chain code: threshold, clean up, pick a component, trace the border.

Builds a noisy two-blob image from scratch so the demo has no file
dependencies, then runs the same pipeline the `extract` subcommand uses.
"""

from pathlib import Path

import numpy as np

from efdshape import (
    area,
    chain_to_contour,
    dilate,
    erode,
    mask_to_chain,
    otsu_threshold,
    perimeter,
    select_component,
    to_grayscale,
)
from efdshape.fileio import save_boundary, save_chain, write_text
from efdshape.svgplot import contour_overlay_svg

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

rng = np.random.default_rng(99)
h = w = 160
yy, xx = np.mgrid[0:h, 0:w]
big = (xx - 60.0) ** 2 / 1.8 + (yy - 80.0) ** 2 <= 40.0**2   # elliptical blob
small = (xx - 130.0) ** 2 + (yy - 30.0) ** 2 <= 12.0**2      # distractor
img = np.where(big | small, 200, 30).astype(np.int16)
img = np.clip(img + rng.integers(-15, 16, size=img.shape), 0, 255).astype(np.uint8)

gray = to_grayscale(img)
k, mask = otsu_threshold(gray)
print(f"otsu threshold: {k}, foreground pixels: {mask.count}")

# opening knocks out the salt noise that survives thresholding
cleaned = dilate(erode(mask))
component = select_component(cleaned, largest=True)
print(f"largest component: {component.count} px (dropped the {small.sum()} px distractor)")

chain = mask_to_chain(component)
print(f"chain code: {len(chain)} links, closed={chain.is_closed}")
print(f"area {area(chain):.0f} px^2, perimeter {perimeter(chain):.1f} px")

contour = chain_to_contour(chain)
save_boundary(OUT / "blob_b.txt", contour)
save_chain(OUT / "blob_c.txt", chain)
write_text(OUT / "blob_overlay.svg", contour_overlay_svg(w, h, contour.vertices))
print(f"wrote {OUT / 'blob_b.txt'}, {OUT / 'blob_c.txt'}, {OUT / 'blob_overlay.svg'}")
