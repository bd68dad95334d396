"""Feature matrices over normalized descriptors and a self-contained PCA."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .efd import EfdSet
from .errors import BadParameter, MixedHarmonicCounts


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """One shape per row; columns are the flattened (a1, b1, c1, d1, ...) coefficients."""

    data: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        d = np.array(self.data, dtype=float)
        if d.ndim != 2 or d.size == 0:
            raise BadParameter("feature data must form a non-empty 2-d array")
        labels = tuple(str(x) for x in self.labels)
        if len(labels) != d.shape[0]:
            raise BadParameter("need exactly one label per row")
        object.__setattr__(self, "data", _frozen(d))
        object.__setattr__(self, "labels", labels)

    @property
    def n_rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def n_cols(self) -> int:
        return int(self.data.shape[1])


def assemble(efds: Sequence[EfdSet], labels: Sequence[str] | None = None) -> FeatureMatrix:
    """Stack normalized descriptor sets into rows of 4N coefficients."""
    efds = list(efds)
    if not efds:
        raise BadParameter("need at least one descriptor set")
    counts = {e.n_harmonics for e in efds}
    if len(counts) > 1:
        raise MixedHarmonicCounts(f"harmonic counts differ: {sorted(counts)}")
    if labels is None:
        labels = [f"shape{i}" for i in range(len(efds))]
    data = np.stack([e.harmonics.ravel() for e in efds])
    return FeatureMatrix(data, tuple(labels))


def _jacobi_eigh(sym: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100):
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Sweeps until the off-diagonal Frobenius norm drops below tol (with a
    machine floor relative to the matrix scale so huge inputs terminate).
    Returns eigenvalues and the eigenvector columns, unordered.
    """
    a = np.array(sym, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return np.array([a[0, 0]]), v
    scale = float(np.linalg.norm(a))
    threshold = max(tol, 1e-15 * scale)
    # skipping rotations this small cannot keep the off-norm above threshold
    skip = threshold / (4.0 * n)
    for _ in range(max_sweeps):
        off = float(np.sqrt(max((a * a).sum() - (np.diag(a) ** 2).sum(), 0.0)))
        if off < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                diff = (a[q, q] - a[p, p]) / (2.0 * apq)
                if diff == 0.0:
                    t = 1.0
                else:
                    t = np.sign(diff) / (abs(diff) + np.hypot(1.0, diff))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    return np.diag(a).copy(), v


@dataclass(frozen=True, eq=False)
class PcaResult:
    scores: np.ndarray
    loadings: np.ndarray
    explained_variance_ratio: np.ndarray
    mean: np.ndarray

    def __post_init__(self):
        for name in ("scores", "loadings", "explained_variance_ratio", "mean"):
            object.__setattr__(self, name, _frozen(np.array(getattr(self, name), dtype=float)))


def pca(m: FeatureMatrix, k: int) -> PcaResult:
    """Principal components of the covariance of the (column-centered) features.

    Components come out in descending eigenvalue order, each flipped so its
    largest-magnitude loading entry is positive. A matrix of identical rows
    has nothing to explain and yields all-zero scores and ratios.
    """
    x = m.data
    rows, cols = x.shape
    if rows < 2:
        raise BadParameter("PCA needs at least 2 rows")
    k = int(k)
    if not 1 <= k <= min(rows - 1, cols):
        raise BadParameter(f"k must lie in 1..{min(rows - 1, cols)}")
    mean = x.mean(axis=0)
    centered = x - mean
    if not centered.any():
        return PcaResult(
            scores=np.zeros((rows, k)),
            loadings=np.eye(cols)[:, :k],
            explained_variance_ratio=np.zeros(k),
            mean=mean,
        )
    cov = centered.T @ centered / (rows - 1)
    evals, evecs = _jacobi_eigh(cov)
    evals = np.clip(evals, 0.0, None)
    order = np.argsort(-evals, kind="stable")
    evals = evals[order]
    evecs = evecs[:, order]
    loadings = evecs[:, :k].copy()
    for j in range(k):
        i = int(np.argmax(np.abs(loadings[:, j])))
        if loadings[i, j] < 0:
            loadings[:, j] = -loadings[:, j]
    total = float(evals.sum())
    ratios = evals[:k] / total if total > 0 else np.zeros(k)
    return PcaResult(
        scores=centered @ loadings,
        loadings=loadings,
        explained_variance_ratio=ratios,
        mean=mean,
    )
