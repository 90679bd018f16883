"""Extremum extraction from sampled curves.

Every located extremum is refined with the parabola through the sample
and its two neighbours.
"""
from __future__ import annotations

import numpy as np


def refine_extremum(t, y, i: int) -> tuple[float, float]:
    """Vertex of the parabola through samples ``i-1, i, i+1``.

    Falls back to the raw sample at the ends of the array or when the
    three points are collinear.
    """
    if i <= 0 or i >= len(y) - 1:
        return float(t[i]), float(y[i])
    t0, t1, t2 = t[i - 1], t[i], t[i + 1]
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    denom = (t0 - t1) * (t0 - t2) * (t1 - t2)
    a = (t2 * (y1 - y0) + t1 * (y0 - y2) + t0 * (y2 - y1)) / denom
    b = (t2 * t2 * (y0 - y1) + t1 * t1 * (y2 - y0) + t0 * t0 * (y1 - y2)) / denom
    if a == 0:
        return float(t1), float(y1)
    tv = -b / (2.0 * a)
    if not t0 <= tv <= t2:
        return float(t1), float(y1)
    c = y1 - a * t1 * t1 - b * t1
    return float(tv), float(a * tv * tv + b * tv + c)


def local_minima(t, y) -> list[tuple[float, float]]:
    y = np.asarray(y)
    idx = np.nonzero((y[1:-1] <= y[:-2]) & (y[1:-1] < y[2:]))[0] + 1
    return [refine_extremum(t, y, int(i)) for i in idx]


def local_maxima(t, y) -> list[tuple[float, float]]:
    y = np.asarray(y)
    idx = np.nonzero((y[1:-1] >= y[:-2]) & (y[1:-1] > y[2:]))[0] + 1
    return [refine_extremum(t, y, int(i)) for i in idx]


def zeros_of_magnitude(t, mag, threshold: float = 1e-2) -> list[float]:
    """Times where a non-negative curve touches zero (minima below ``threshold``)."""
    return [tv for tv, yv in local_minima(t, mag) if yv < threshold]


def first_peak(t, y, rel_threshold: float = 0.9, hysteresis: float = 0.1) -> tuple[float, float]:
    """First major maximum of ``y``.

    The first excursion above ``rel_threshold * max(y)`` is followed until
    the curve drops below ``(rel_threshold - hysteresis) * max(y)``, so fast
    ripple near the threshold cannot split it. Samples of the excursion
    within ``rel_threshold`` of its own maximum are fitted with a
    least-squares parabola whose vertex is returned; a ripple riding on a
    slow, locally symmetric envelope averages out of that fit. Short
    excursions fall back to the three-sample parabola.
    """
    t = np.asarray(t, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    top = float(np.max(y))
    start = int(np.argmax(y >= rel_threshold * top))
    low = (rel_threshold - hysteresis) * top
    stop = start
    while stop < len(y) and y[stop] >= low:
        stop += 1
    i_max = start + int(np.argmax(y[start:stop]))
    idx = start + np.nonzero(y[start:stop] >= rel_threshold * y[i_max])[0]
    if len(idx) >= 5:
        tc = t[idx].mean()
        a, b, c = np.polyfit(t[idx] - tc, y[idx], 2)
        if a < 0:
            tv = -b / (2.0 * a)
            if t[idx[0]] - tc <= tv <= t[idx[-1]] - tc:
                return float(tv + tc), float(c - b * b / (4.0 * a))
    return refine_extremum(t, y, i_max)
