"""Batch integer kernels with a numba path and a pure-numpy fallback.

Set ``IWAHORI_NO_NUMBA=1`` to force the numpy path (also used when numba
is not importable).  Both paths compute identical int64 results.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("IWAHORI_NO_NUMBA", "").lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
except ImportError:
    njit = None

HAVE_NUMBA = njit is not None


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# -- closed-form length ------------------------------------------------------


def _lengths_numpy(mu, flags, posroots):
    pair = mu @ posroots.T
    return np.abs(pair - flags).sum(axis=1)


def _lengths_loop(mu, flags, posroots):
    n, r = mu.shape
    p = posroots.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for e in range(n):
        total = 0
        for a in range(p):
            s = 0
            for j in range(r):
                s += posroots[a, j] * mu[e, j]
            d = s - flags[e, a]
            total += d if d >= 0 else -d
        out[e] = total
    return out


# -- hyperplane scan ---------------------------------------------------------


def _hyper_numpy(pts, base, denom, roots, bounds):
    if len(pts) == 0:
        return np.zeros(0, dtype=np.int64)
    kmax = int(bounds.max())
    ks = np.arange(-kmax, kmax + 1, dtype=np.int64)
    vb = roots @ base                       # (R,)
    vp = pts @ roots.T                      # (n, R)
    at_base = vb[None, :, None] + ks[None, None, :] * denom > 0
    at_pt = vp[:, :, None] + ks[None, None, :] * denom < 0
    in_range = np.abs(ks)[None, None, :] <= bounds[:, None, None]
    return (at_base & at_pt & in_range).sum(axis=(1, 2)).astype(np.int64)


def _hyper_loop(pts, base, denom, roots, bounds):
    n, r = pts.shape
    nr = roots.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for e in range(n):
        b = bounds[e]
        count = 0
        for a in range(nr):
            vb = 0
            vp = 0
            for j in range(r):
                vb += roots[a, j] * base[j]
                vp += roots[a, j] * pts[e, j]
            for k in range(-b, b + 1):
                if vb + k * denom > 0 and vp + k * denom < 0:
                    count += 1
        out[e] = count
    return out


if HAVE_NUMBA:
    _lengths_fast = njit(cache=True, nogil=True)(_lengths_loop)
    _hyper_fast = njit(cache=True, nogil=True)(_hyper_loop)
else:
    _lengths_fast = _lengths_numpy
    _hyper_fast = _hyper_numpy


def closed_form_lengths(mu, flags, posroots, *, use_numba: bool | None = None) -> np.ndarray:
    """Row-wise ``sum_a |<mu, a> - flag_a|`` over positive roots ``a``.

    mu: (n, r) translations in coweight coordinates; flags: (n, P) with 1
    where ``w^{-1} a < 0``; posroots: (P, r).
    """
    args = (np.ascontiguousarray(mu, dtype=np.int64),
            np.ascontiguousarray(flags, dtype=np.int64),
            np.ascontiguousarray(posroots, dtype=np.int64))
    fast = HAVE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA)
    return _lengths_fast(*args) if fast else _lengths_numpy(*args)


def hyperplane_counts(pts, base, denom, roots, bounds, *, use_numba: bool | None = None) -> np.ndarray:
    """Count affine roots ``(a, k)``, ``|k| <= bound``, positive at ``base`` and negative at each point.

    Points are integer coordinates scaled by ``denom``.
    """
    args = (np.ascontiguousarray(pts, dtype=np.int64),
            np.ascontiguousarray(base, dtype=np.int64),
            np.int64(denom),
            np.ascontiguousarray(roots, dtype=np.int64),
            np.ascontiguousarray(bounds, dtype=np.int64))
    fast = HAVE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA)
    return _hyper_fast(*args) if fast else _hyper_numpy(*args)
