"""Convex hulls and logarithmic extreme-point queries on them.

Hulls are strictly convex (collinear vertices dropped) and counterclockwise,
which the binary search in hull_extreme_index relies on.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def convex_hull_indices(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Indices of the strictly convex hull, counterclockwise (monotone chain).

    Degenerate inputs collapse: all-equal points give one index, collinear
    points give the two extremes.
    """
    n = len(xs)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    order = np.lexsort((ys, xs))
    lower: list[int] = []
    upper: list[int] = []
    for idx in order:
        x, y = xs[idx], ys[idx]
        while len(lower) >= 2:
            x1, y1 = xs[lower[-1]], ys[lower[-1]]
            x0, y0 = xs[lower[-2]], ys[lower[-2]]
            if (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) <= 0.0:
                lower.pop()
            else:
                break
        lower.append(int(idx))
        while len(upper) >= 2:
            x1, y1 = xs[upper[-1]], ys[upper[-1]]
            x0, y0 = xs[upper[-2]], ys[upper[-2]]
            if (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) >= 0.0:
                upper.pop()
            else:
                break
        upper.append(int(idx))
    if len(lower) == 1:
        return np.array(lower, dtype=np.int64)
    hull = lower[:-1] + upper[::-1][:-1]
    if len(hull) == 2 and (
        xs[hull[0]] == xs[hull[1]] and ys[hull[0]] == ys[hull[1]]
    ):
        hull = hull[:1]
    return np.array(hull, dtype=np.int64)


def hull_extreme_index(hx: np.ndarray, hy: np.ndarray, dx: float, dy: float) -> int:
    """Index of the hull vertex maximizing dot((x, y), (dx, dy)).

    hx/hy list a strictly convex counterclockwise polygon. Found by binary
    search over the cyclic dot-product sequence with exact sign decisions,
    so a near-flat crest cannot mislead it. Exact ties resolve to the lower
    index, matching a first-max linear scan.
    """
    n = len(hx)
    if n == 1:
        return 0
    if n == 2:
        d0 = hx[0] * dx + hy[0] * dy
        d1 = hx[1] * dx + hy[1] * dy
        return 0 if d0 >= d1 else 1
    best = _extreme_search(hx, hy, dx, dy, n)
    return _tie_to_lowest(hx, hy, dx, dy, n, best)


# Filter bound for sign of (xi-xj)*dx + (yi-yj)*dy: three roundings.
_DOT_FILTER = 4.0 * 2.0**-53


def _dot_diff_sign(hx, hy, dx, dy, i, j):
    # Exact sign of dot(v_i, d) - dot(v_j, d).
    t1 = (hx[i] - hx[j]) * dx
    t2 = (hy[i] - hy[j]) * dy
    g = t1 + t2
    bound = _DOT_FILTER * (abs(t1) + abs(t2))
    if g > bound:
        return 1
    if g < -bound:
        return -1
    if bound == 0.0:
        return 0
    exact = (Fraction(float(hx[i])) - Fraction(float(hx[j]))) * Fraction(dx) + (
        Fraction(float(hy[i])) - Fraction(float(hy[j]))
    ) * Fraction(dy)
    if exact > 0:
        return 1
    if exact < 0:
        return -1
    return 0


def _extreme_search(hx, hy, dx, dy, n):
    # Binary search over the cyclic bitonic dot sequence (the scheme used for
    # convex-polygon tangent finding). e(i) is the ascent sign of the edge
    # leaving vertex i; the crest is the unique vertex with a strictly
    # ascending in-edge and a non-ascending out-edge.
    def e(i):
        return _dot_diff_sign(hx, hy, dx, dy, (i + 1) % n, i % n)

    def s(i, j):
        return _dot_diff_sign(hx, hy, dx, dy, i % n, j % n)

    def extr(i):
        return e(i) <= 0 and e((i - 1) % n) > 0

    if extr(0):
        return 0
    lo, hi = 0, n
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if extr(mid):
            return mid
        elo, emid = e(lo), e(mid)
        if elo > emid or (elo == emid and elo == s(lo, mid)):
            hi = mid
        else:
            lo = mid
    return lo


def _tie_to_lowest(hx, hy, dx, dy, n, k):
    # The argmax set of a strictly convex polygon is one vertex or one edge
    # (two adjacent vertices). Normalize to the index a first-max scan finds.
    dk = hx[k] * dx + hy[k] * dy
    prev = (k - 1) % n
    nxt = (k + 1) % n
    candidates = [k]
    if hx[prev] * dx + hy[prev] * dy == dk:
        candidates.append(prev)
    if hx[nxt] * dx + hy[nxt] * dy == dk:
        candidates.append(nxt)
    if len(candidates) == 1:
        return k
    if 0 in candidates and (n - 1) in candidates:
        return 0
    return min(candidates)
