"""JIT-compiled hot kernels (numba backend).

The two loops that dominate runtime at large degree live here: evaluating a
full row of Bernstein basis values p_{m,0..m}(x), and the sliding-window
range scan behind the modulus of continuity.  ``_kernels_numpy`` provides
vectorized equivalents; ``backend`` picks one at import time.
"""
import math

import numpy as np
from numba import njit


@njit(cache=True)
def _row_into(m, x, out):
    # Left-to-right sweep p_{m,j+1} = p_{m,j} * r * (m-j)/(j+1) with the
    # running value kept as mant * 2**e2 so (1-x)**m never underflows.
    # eh compensates the rounding of 1-x, which x**j*(1-x)**(m-j) amplifies
    # by a factor (m-j).
    if x <= 0.0:
        for j in range(m + 1):
            out[j] = 0.0
        out[0] = 1.0
        return
    if x >= 1.0:
        for j in range(m + 1):
            out[j] = 0.0
        out[m] = 1.0
        return
    h = 1.0 - x
    eh = ((1.0 - h) - x) / h
    r = x / h
    mant = 1.0
    e2 = 0
    for _ in range(m):
        mant *= h
        if mant < 2.0 ** -500:
            mant = math.ldexp(mant, 1000)
            e2 -= 1000
    out[0] = math.ldexp(mant * (1.0 + m * eh), e2)
    for j in range(1, m + 1):
        mant *= r * (m - j + 1) / j
        if mant >= 2.0 ** 500:
            mant = math.ldexp(mant, -1000)
            e2 += 1000
        elif 0.0 < mant < 2.0 ** -500:
            mant = math.ldexp(mant, 1000)
            e2 -= 1000
        out[j] = math.ldexp(mant * (1.0 + (m - j) * eh), e2)


@njit(cache=True)
def bernstein_rows(m, xs):
    """Rows of basis values: result[i, j] = p_{m,j}(xs[i])."""
    rows = np.empty((xs.shape[0], m + 1))
    for i in range(xs.shape[0]):
        _row_into(m, xs[i], rows[i])
    return rows


@njit(cache=True)
def window_range_max(values, w):
    """Max over i of (max - min) of values[i : i + w + 1], via monotonic deques."""
    n = values.shape[0]
    if w < 1:
        return 0.0
    if w >= n - 1:
        return float(np.max(values) - np.min(values))
    qmax = np.empty(n, dtype=np.int64)
    qmin = np.empty(n, dtype=np.int64)
    hmax = tmax = 0
    hmin = tmin = 0
    best = 0.0
    for i in range(n):
        while tmax > hmax and values[qmax[tmax - 1]] <= values[i]:
            tmax -= 1
        qmax[tmax] = i
        tmax += 1
        while tmin > hmin and values[qmin[tmin - 1]] >= values[i]:
            tmin -= 1
        qmin[tmin] = i
        tmin += 1
        if qmax[hmax] <= i - w - 1:
            hmax += 1
        if qmin[hmin] <= i - w - 1:
            hmin += 1
        if i >= w:
            rng = values[qmax[hmax]] - values[qmin[hmin]]
            if rng > best:
                best = rng
    return best


def warmup():
    """Trigger JIT compilation so timed runs do not pay it."""
    bernstein_rows(4, np.array([0.0, 0.3, 1.0]))
    window_range_max(np.array([0.0, 1.0, 0.5, 0.25]), 2)
