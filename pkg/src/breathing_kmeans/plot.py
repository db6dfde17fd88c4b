"""Static SVG scatter plots of data points and codebooks."""

from __future__ import annotations

from typing import Sequence

import numpy as np

CODEBOOK_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e")


def scatter_svg(
    X: np.ndarray,
    codebooks: Sequence[np.ndarray] = (),
    axes: tuple[int, int] = (0, 1),
    size: int = 600,
    margin: int = 20,
    point_radius: float = 1.2,
    centroid_radius: float = 4.0,
) -> str:
    """Render ``X`` as small grey dots and each codebook as larger outlined circles.

    Higher-dimensional data is projected onto the two columns in ``axes``.
    Only ``<circle>`` elements are emitted: one per point and one per centroid.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] < 2:
        raise ValueError("plotting needs data with at least two dimensions")
    a, b = axes
    d = X.shape[1]
    if not (0 <= a < d and 0 <= b < d) or a == b:
        raise ValueError(f"axes {axes} must be two distinct columns of {d}")
    books = [np.atleast_2d(np.asarray(C, dtype=float)) for C in codebooks]
    for C in books:
        if C.shape[1] != d:
            raise ValueError("codebook dimension does not match the data")

    everything = np.vstack([X] + books)[:, [a, b]]
    lo = everything.min(axis=0)
    span = everything.max(axis=0) - lo
    scale = (size - 2 * margin) / max(float(span.max()), 1e-300)

    def xy(p) -> tuple[float, float]:
        # flip y so larger values are drawn higher up
        return margin + (p[a] - lo[0]) * scale, size - margin - (p[b] - lo[1]) * scale

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<g fill="#555555" fill-opacity="0.6" stroke="none">',
    ]
    for p in X:
        x, y = xy(p)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{point_radius}"/>')
    out.append("</g>")
    for i, C in enumerate(books):
        color = CODEBOOK_COLORS[i % len(CODEBOOK_COLORS)]
        out.append(f'<g fill="{color}" fill-opacity="0.35" stroke="{color}" stroke-width="1.5">')
        for p in C:
            x, y = xy(p)
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{centroid_radius}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
