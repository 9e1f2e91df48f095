"""Pure numpy implementations of the hot kernels.

Every function here has a twin in ``_ckernels.pyx`` performing the same
floating point operations in the same order, so both backends return
bit-identical results on the same inputs.
"""

import numpy as np

BACKEND = "python"


def _two_sum_prefix(x):
    # Running sum with the TwoSum rounding error of every step carried in a
    # second running sum (Ogita-Rump-Oishi Sum2, prefix form).
    n = x.shape[0]
    out = np.zeros(n + 1)
    if n == 0:
        return out
    s = np.cumsum(x)
    prev = np.empty(n)
    prev[0] = 0.0
    prev[1:] = s[:-1]
    bb = s - prev
    err = (prev - (s - bb)) + (x - bb)
    out[1:] = s + np.cumsum(err)
    return out


def comp_cumsum(x):
    """Compensated partial sums ``[0, x0, x0 + x1, ...]`` of length n + 1."""
    return _two_sum_prefix(np.ascontiguousarray(x, dtype=np.float64))


def comp_cumsum_sq(x, scale, shift):
    """Compensated partial sums of ``(scale * x_i - shift) ** 2``.

    The result is forced nondecreasing so that threshold searches over it
    are well defined.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    d = scale * x - shift
    out = _two_sum_prefix(d * d)
    np.maximum.accumulate(out, out=out)
    return out


_SPLIT = 134217729.0  # 2**27 + 1


def product_error(a, b):
    """Exact rounding error ``a*b - fl(a*b)`` (Dekker's TwoProduct)."""
    p = a * b
    c = _SPLIT * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLIT * b
    bh = c - (c - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def search_index(cum, t):
    """Largest m with ``cum[m] <= t * cum[-1]`` in exact arithmetic.

    ``cum`` must be nondecreasing. The product is rounded, so when it lands
    exactly on some ``cum[m]`` its rounding error decides the tie.
    """
    total = cum[cum.shape[0] - 1]
    thr = t * total
    # left and right only differ when thr equals some cum[m]
    side = "left" if product_error(t, total) < 0 else "right"
    return int(np.searchsorted(cum, thr, side=side)) - 1


def search_indices(cum, ts):
    ts = np.asarray(ts, dtype=np.float64)
    total = cum[cum.shape[0] - 1]
    thr = ts * total
    right = np.searchsorted(cum, thr, side="right").astype(np.int64) - 1
    left = np.searchsorted(cum, thr, side="left").astype(np.int64) - 1
    below = product_error(ts, total) < 0
    return np.where(below, left, right)


def sup_abs_attained(breaks, values):
    """max |v_k| over segments of positive width, plus the endpoint value."""
    breaks = np.asarray(breaks, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    n = values.shape[0] - 1
    best = abs(values[n])
    if n > 0:
        live = breaks[:-1] < breaks[1:]
        if live.any():
            best = max(best, float(np.max(np.abs(values[:-1][live]))))
    return float(best)


def step_integral(breaks, values):
    """Exact integral of the right-continuous step path, compensated."""
    breaks = np.asarray(breaks, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    terms = (breaks[1:] - breaks[:-1]) * values[:-1]
    return float(_two_sum_prefix(terms)[-1])


def sup_intersection(partial, half):
    """Intersection over k = 1..n of ``[(S_k - H) / k, (S_k + H) / k]``."""
    partial = np.asarray(partial, dtype=np.float64)
    k = np.arange(1, partial.shape[0], dtype=np.float64)
    s = partial[1:]
    lo = float(np.max((s - half) / k))
    hi = float(np.min((s + half) / k))
    return lo, hi


def weighted_partial(weights, partial):
    """Return ``(sum_k w_{k+1} S_k, sum_k w_{k+1} k)`` over k = 1..n-1.

    ``weights`` holds w_1..w_n, ``partial`` holds S_0..S_n.
    """
    weights = np.asarray(weights, dtype=np.float64)
    partial = np.asarray(partial, dtype=np.float64)
    n = weights.shape[0]
    if n < 2:
        return 0.0, 0.0
    w = weights[1:]
    k = np.arange(1, n, dtype=np.float64)
    c = _two_sum_prefix(w * partial[1:n])[-1]
    d = _two_sum_prefix(w * k)[-1]
    return float(c), float(d)


def path_sup_abs(increments, scale):
    """Row-wise ``max_j |scale * sum_{i<=j} increments[i]|`` for a 2D block."""
    inc = np.asarray(increments, dtype=np.float64)
    paths = np.cumsum(inc, axis=1)
    return np.abs(paths).max(axis=1) * scale
