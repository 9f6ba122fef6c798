"""Bracketed scalar maximisation by golden-section search."""
from __future__ import annotations

import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1 / golden ratio
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1 / golden ratio**2


def golden_section_max(f, a: float, b: float, tol: float = 1e-8) -> float:
    """Maximise a unimodal ``f`` on [a, b]; returns the midpoint of the
    final bracket, whose width is at most ``tol``."""
    a, b = float(min(a, b)), float(max(a, b))
    h = b - a
    if h <= tol:
        return 0.5 * (a + b)
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    for _ in range(n - 1):
        h *= INV_PHI
        if fc > fd:
            b, d, fd = d, c, fc
            c = a + INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * h
            fd = f(d)
    if fc > fd:
        return 0.5 * (a + d)
    return 0.5 * (c + b)


def grid_then_golden(f, lo: float, hi: float, tol: float = 1e-8, n_grid: int = 100) -> float:
    """Scan ``n_grid`` points, then refine around the best one.

    The scan guards against objectives that are only unimodal near their
    optimum; the golden-section stage runs on the two cells that flank the
    best grid point.
    """
    grid = np.linspace(lo, hi, n_grid)
    values = [f(x) for x in grid]
    k = int(np.argmax(values))
    left = grid[max(k - 1, 0)]
    right = grid[min(k + 1, n_grid - 1)]
    return golden_section_max(f, left, right, tol)
