"""Deterministic SVG rendering of the transfer-intensity circle matrix."""

from __future__ import annotations

import math

import numpy as np

__all__ = ["render_transfer_svg"]

CELL = 42.0
LABEL_SPACE = 96.0
MAX_RADIUS = 18.0

INTER_COLOR = "#e8711a"
INTRA_COLOR = "#9a9a9a"


def render_transfer_svg(crossover, task_names) -> str:
    """Circle-matrix SVG of mean crossover transfer counts.

    The circle at (row t, column s) scales its area linearly with the mean
    number of times a source committed to task s improved an incumbent
    committed to task t. Diagonal cells combine the intra-task count (gray
    inner circle) with the summed inter-task exchanges of that row (outer
    circle).
    """
    matrix = np.asarray(crossover, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"transfer matrix must be square, got shape {matrix.shape}")
    k = matrix.shape[0]
    if len(task_names) != k:
        raise ValueError("task_names length must match the matrix")

    off_diag = matrix - np.diag(np.diag(matrix))
    inter_sums = off_diag.sum(axis=1)
    diag_totals = np.diag(matrix) + inter_sums
    scale_max = max(float(off_diag.max(initial=0.0)), float(diag_totals.max(initial=0.0)))

    def radius(value):
        if scale_max <= 0 or value <= 0:
            return 0.0
        return MAX_RADIUS * math.sqrt(value / scale_max)

    width = LABEL_SPACE + k * CELL + 8
    height = LABEL_SPACE + k * CELL + 8
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for idx, name in enumerate(task_names):
        x = LABEL_SPACE + idx * CELL + CELL / 2
        parts.append(
            f'<text x="{x:.1f}" y="{LABEL_SPACE - 6:.1f}" font-size="9" '
            f'text-anchor="start" transform="rotate(-55 {x:.1f} {LABEL_SPACE - 6:.1f})">'
            f'{name}</text>')
        y = LABEL_SPACE + idx * CELL + CELL / 2 + 3
        parts.append(
            f'<text x="{LABEL_SPACE - 6:.1f}" y="{y:.1f}" font-size="9" '
            f'text-anchor="end">{name}</text>')

    for t in range(k):
        for s in range(k):
            cx = LABEL_SPACE + s * CELL + CELL / 2
            cy = LABEL_SPACE + t * CELL + CELL / 2
            parts.append(
                f'<rect x="{LABEL_SPACE + s * CELL:.1f}" y="{LABEL_SPACE + t * CELL:.1f}" '
                f'width="{CELL:.1f}" height="{CELL:.1f}" fill="none" '
                'stroke="#cccccc" stroke-width="0.5"/>')
            if t == s:
                outer = radius(diag_totals[t])
                inner = radius(matrix[t, t])
                if outer > 0:
                    parts.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{outer:.2f}" '
                                 f'fill="{INTER_COLOR}"/>')
                if inner > 0:
                    parts.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{inner:.2f}" '
                                 f'fill="{INTRA_COLOR}"/>')
            else:
                r = radius(matrix[t, s])
                if r > 0:
                    parts.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{r:.2f}" '
                                 f'fill="{INTER_COLOR}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
