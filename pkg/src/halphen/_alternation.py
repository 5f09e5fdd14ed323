"""Locating alternating extrema of an error curve.

Shared by the polynomial and rational exchange iterations and by the
independent sup-norm scans used to validate them.
"""

from __future__ import annotations

import mpmath
import numpy as np

from .precision import get_precision_bits


def _golden_steps() -> int:
    # value accuracy ~ (bracket shrink)^2, so resolve x to ~sqrt(eps)
    return int(0.75 * get_precision_bits()) + 4


def golden_maximize(fun, a, b, steps: int | None = None):
    """Maximize ``fun`` on each bracket ``[a[i], b[i]]`` simultaneously.

    ``fun`` must accept and return arrays.  Returns ``(x, fun(x))``.
    """
    steps = _golden_steps() if steps is None else steps
    a = np.array(a, copy=True)
    b = np.array(b, copy=True)
    if a.dtype == object:
        with mpmath.workprec(get_precision_bits()):
            r = (mpmath.sqrt(5) - 1) / 2
    else:
        r = (np.sqrt(5.0) - 1) / 2
    c = b - r * (b - a)
    d = a + r * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(steps):
        left = fc >= fd
        a, b = np.where(left, a, c), np.where(left, d, b)
        # surviving interior probe moves to the other slot
        c, d, fc, fd = (
            np.where(left, b - r * (b - a), d),
            np.where(left, c, a + r * (b - a)),
            np.where(left, fc, fd),
            np.where(left, fc, fd),
        )
        probe = np.where(left, c, d)
        fp = fun(probe)
        fc = np.where(left, fp, fc)
        fd = np.where(left, fd, fp)
    x = np.where(fc >= fd, c, d)
    return x, np.where(fc >= fd, fc, fd)


def sign_run_maxima(e) -> np.ndarray:
    """Index of the largest ``|e|`` in every maximal run of constant sign.

    Exact zeros belong to no run.  Consecutive returned indices therefore
    carry strictly alternating signs.
    """
    e = np.asarray(e)
    s = np.sign(e.astype(float))
    nz = np.flatnonzero(s != 0)
    if len(nz) == 0:
        return nz
    run_id = np.concatenate([[0], np.cumsum(s[nz][1:] != s[nz][:-1])])
    absval = np.abs(e[nz].astype(float))
    out = []
    start = 0
    for end in np.flatnonzero(np.diff(run_id)).tolist() + [len(nz) - 1]:
        seg = slice(start, end + 1)
        out.append(nz[seg][np.argmax(absval[seg])])
        start = end + 1
    return np.array(out, dtype=int)


def reduce_alternant(x, e, count: int):
    """Shrink an alternating sequence of extrema to ``count`` points.

    Points are removed so that signs keep alternating and the smallest
    magnitudes go first: an excess of one drops the weaker end point,
    otherwise the globally weakest point is removed together with the weaker
    of its two neighbours (those two neighbours share a sign).
    """
    x = list(x)
    e = list(e)
    while len(x) > count:
        mags = [abs(v) for v in e]
        if len(x) - count == 1:
            i = 0 if mags[0] < mags[-1] else len(x) - 1
            del x[i], e[i]
            continue
        i = int(np.argmin(np.array(mags, dtype=float)))
        if i == 0 or i == len(x) - 1:
            del x[i], e[i]
            continue
        j = i - 1 if mags[i - 1] < mags[i + 1] else i + 1
        for idx in sorted((i, j), reverse=True):
            del x[idx], e[idx]
    return np.array(x, dtype=np.asarray(x).dtype), np.array(e, dtype=np.asarray(e).dtype)


def _subdivide(breaks, per_interval: int):
    """Chebyshev-clustered points inside every gap of ``breaks`` (breaks included)."""
    breaks = np.asarray(breaks)
    t = (1 - np.cos(np.pi * np.arange(1, per_interval) / per_interval)) / 2
    if breaks.dtype == object:
        t = np.array([mpmath.mpf(v) for v in t], dtype=object)
    lo, hi = breaks[:-1], breaks[1:]
    inner = lo[:, None] + (hi - lo)[:, None] * t[None, :]
    return np.concatenate([breaks, inner.ravel()])


def alternating_extrema(err, lo, hi, breakpoints=(), base_grid=None, per_interval=24,
                        refine=True):
    """Alternating local extrema of ``err`` on ``[lo, hi]``.

    ``err`` is sampled on ``per_interval`` points inside each gap between
    consecutive breakpoints (the domain endpoints are always breakpoints) and
    on ``base_grid`` if given.  The largest sample of each constant-sign run is
    then refined by golden-section search on its neighbouring bracket.

    Returns ``(x, e)`` with ``x`` ascending and ``sign(e)`` alternating.
    """
    pts = [np.asarray([lo, hi]), np.asarray(breakpoints)]
    if base_grid is not None:
        pts.append(np.asarray(base_grid))
    dtype = object if any(p.dtype == object for p in pts) else float
    breaks = np.concatenate([p.astype(dtype) for p in pts])
    breaks = breaks[(breaks >= lo) & (breaks <= hi)]
    breaks = np.unique(breaks)
    grid = np.unique(_subdivide(breaks, per_interval))
    values = err(grid)
    idx = sign_run_maxima(values)
    if len(idx) == 0:
        return grid[:0], values[:0]
    x, e = grid[idx], values[idx]
    if refine:
        left = grid[np.maximum(idx - 1, 0)]
        right = grid[np.minimum(idx + 1, len(grid) - 1)]
        sgn = np.sign(e.astype(float))
        xr, fr = golden_maximize(lambda z: _signed(err, z, sgn), left, right)
        better = fr > sgn * e
        x = np.where(better, xr, x)
        e = np.where(better, sgn * fr, e)
    return x, e


def _signed(err, z, sgn):
    return sgn * err(z)


def sup_scan(err, lo, hi, n_points: int = 2048, breakpoints=()):
    """Independent sup-norm estimate of ``err`` on ``[lo, hi]``.

    Samples ``n_points`` Chebyshev-distributed points (plus optional
    breakpoints) and polishes every local maximum of ``|err|`` by golden
    section.
    """
    k = np.arange(n_points)
    grid = lo + (hi - lo) * (1 - np.cos(np.pi * k / (n_points - 1))) / 2
    grid = np.unique(np.concatenate([grid, np.asarray(breakpoints, dtype=float)]))
    grid = grid[(grid >= lo) & (grid <= hi)]
    vals = np.abs(np.asarray(err(grid), dtype=float))
    inner = np.flatnonzero((vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:])) + 1
    best = float(np.max(vals))
    if len(inner):
        _, fr = golden_maximize(lambda z: np.abs(np.asarray(err(z), dtype=float)),
                                grid[inner - 1], grid[inner + 1], steps=60)
        best = max(best, float(np.max(fr)))
    return best
