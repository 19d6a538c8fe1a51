"""Pure numpy/scipy fallbacks for the hot kernels.

Independent algorithms from the numba versions: basis rows go through cached
exact log-binomials instead of a scaled sweep, and the window scan uses
scipy.ndimage's C filters instead of explicit deques.  Cross-checking the two
backends is part of the test suite.
"""
import math
from functools import lru_cache

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d


@lru_cache(maxsize=256)
def _log_binomials(m):
    # log C(m, j) from the exact integer row; the bit-shift keeps the float
    # conversion at one rounding even when C(m, j) overflows a double.
    out = np.empty(m + 1)
    c = 1
    for j in range(m + 1):
        bl = c.bit_length()
        if bl <= 53:
            out[j] = math.log(c)
        else:
            out[j] = math.log(float(c >> (bl - 53))) + (bl - 53) * math.log(2.0)
        if j < m:
            c = c * (m - j) // (j + 1)
    out.flags.writeable = False
    return out


def bernstein_rows(m, xs):
    """Rows of basis values: result[i, j] = p_{m,j}(xs[i])."""
    xs = np.asarray(xs, dtype=float)
    js = np.arange(m + 1)
    rows = np.empty((xs.shape[0], m + 1))
    interior = (xs > 0.0) & (xs < 1.0)
    if np.any(interior):
        xi = xs[interior, None]
        h = 1.0 - xi
        eh = ((1.0 - h) - xi) / h
        lp = _log_binomials(m)[None, :] + js * np.log(xi) + (m - js) * np.log1p(-xi)
        rows[interior] = np.exp(lp) * (1.0 + (m - js) * eh)
    edge = ~interior
    if np.any(edge):
        rows[edge] = 0.0
        rows[edge & (xs <= 0.0)] = np.eye(1, m + 1, 0)
        rows[edge & (xs >= 1.0)] = np.eye(1, m + 1, m)
    return rows


def window_range_max(values, w):
    """Max over i of (max - min) of values[i : i + w + 1]."""
    n = values.shape[0]
    if w < 1:
        return 0.0
    if w >= n - 1:
        return float(np.max(values) - np.min(values))
    size = w + 1
    lo = size // 2
    mx = maximum_filter1d(values, size=size, mode="nearest", origin=-lo)
    mn = minimum_filter1d(values, size=size, mode="nearest", origin=-lo)
    return float(np.max(mx[: n - w] - mn[: n - w]))


def warmup():
    bernstein_rows(4, np.array([0.0, 0.3, 1.0]))
    window_range_max(np.array([0.0, 1.0, 0.5, 0.25]), 2)
