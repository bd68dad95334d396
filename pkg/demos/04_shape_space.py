"""Shape space: normalized descriptors of the corpus and its 54 variants under PCA.

Because normalization cancels every pose transformation, the nine copies of
each shape collapse onto a single point, leaving exactly six clusters.
"""

from pathlib import Path

import numpy as np

from efdshape import assemble, compute_harmonics, nine_suite, normalize_true, pca, shapes
from efdshape.fileio import build_scores_csv, write_text
from efdshape.svgplot import scatter_svg

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

efds, labels = [], []
for name, contour in shapes.corpus().items():
    for variant in nine_suite(contour):
        norm, _ = normalize_true(compute_harmonics(variant, 35))
        efds.append(norm)
        labels.append(name)

matrix = assemble(efds, labels)
print(f"feature matrix: {matrix.n_rows} rows x {matrix.n_cols} columns")

result = pca(matrix, 2)
print("explained variance ratio:", [round(float(r), 4) for r in result.explained_variance_ratio])

for name in shapes.corpus():
    rows = result.scores[[i for i, l in enumerate(labels) if l == name]]
    spread = float(np.linalg.norm(rows - rows.mean(axis=0), axis=1).max())
    center = rows.mean(axis=0)
    print(f"{name:10s} center ({center[0]:+.4f}, {center[1]:+.4f})  within-cluster spread {spread:.2e}")

write_text(OUT / "scores.csv", build_scores_csv(matrix.labels, result.scores, result.explained_variance_ratio))
write_text(OUT / "scatter.svg", scatter_svg(matrix.labels, result.scores, result.explained_variance_ratio))
print(f"wrote {OUT / 'scores.csv'} and {OUT / 'scatter.svg'}")
