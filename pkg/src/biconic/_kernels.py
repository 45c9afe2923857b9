"""Hot integer search kernels: numba @njit with a pure-numpy fallback.

The two genuinely hot loops in the package are bounded-height searches over
integer lattice points (conic solutions, surface points).  Both backends do
exact int64 arithmetic; inputs are guarded against overflow and routed to a
big-integer Python path when out of range.

Select the backend with the environment variable ``BICONIC_KERNELS``
(``numba`` or ``numpy``; default numba when available).
"""

from __future__ import annotations

import math
import os

import numpy as np

_INT64_GUARD = 2 ** 61
_FLOAT_EXACT = 2 ** 52

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f
        return wrap(args[0]) if args and callable(args[0]) else wrap


def backend() -> str:
    env = os.environ.get("BICONIC_KERNELS", "").strip().lower()
    if env in ("numba", "numpy"):
        if env == "numba" and not _HAVE_NUMBA:
            return "numpy"
        return env
    return "numba" if _HAVE_NUMBA else "numpy"


# --- conic point search ------------------------------------------------------
#
# Smallest zero of a x^2 + b y^2 + c z^2 + d xy + e xz + f yz with
# 0 < max(|x|,|y|,|z|) <= hmax, minimizing (height, x, y, z) lexicographically.
# Scanning each height ring in ascending (x, y, z) order makes the first hit
# the lexicographic minimum, so all three backends agree exactly.


@njit(cache=True)
def _conic_ring_numba(a, b, c, d, e, f, h):  # pragma: no cover - jitted
    for x in range(-h, h + 1):
        xedge = x == -h or x == h
        for y in range(-h, h + 1):
            edge = xedge or y == -h or y == h
            for z in range(-h, h + 1):
                if not edge and z != -h and z != h:
                    continue
                if x == 0 and y == 0 and z == 0:
                    continue
                v = a * x * x + b * y * y + c * z * z + d * x * y + e * x * z + f * y * z
                if v == 0:
                    return True, x, y, z
    return False, 0, 0, 0


def _conic_ring_numpy(a, b, c, d, e, f, h):
    rng = np.arange(-h, h + 1, dtype=np.int64)
    x, y, z = (g.ravel() for g in np.meshgrid(rng, rng, rng, indexing="ij"))
    on_ring = (np.abs(x) == h) | (np.abs(y) == h) | (np.abs(z) == h)
    x, y, z = x[on_ring], y[on_ring], z[on_ring]
    v = a * x * x + b * y * y + c * z * z + d * x * y + e * x * z + f * y * z
    sol = (v == 0) & ((x != 0) | (y != 0) | (z != 0))
    if not sol.any():
        return False, 0, 0, 0
    xs, ys, zs = x[sol], y[sol], z[sol]
    i = np.lexsort((zs, ys, xs))[0]
    return True, int(xs[i]), int(ys[i]), int(zs[i])


def _conic_ring_python(coeffs, h):
    a, b, c, d, e, f = coeffs
    for x in range(-h, h + 1):
        xe = abs(x) == h
        for y in range(-h, h + 1):
            zs = range(-h, h + 1) if (xe or abs(y) == h) else (-h, h)
            for z in zs:
                if x == 0 and y == 0 and z == 0:
                    continue
                if a * x * x + b * y * y + c * z * z + d * x * y + e * x * z + f * y * z == 0:
                    return (x, y, z)
    return None


def conic_search(coeffs: tuple[int, ...], hmax: int) -> tuple[int, int, int] | None:
    """First zero of the ternary form in the height-ordered lattice scan."""
    a, b, c, d, e, f = (int(v) for v in coeffs)
    biggest = max(abs(v) for v in (a, b, c, d, e, f)) or 1
    use_python = biggest * 6 * hmax * hmax >= _INT64_GUARD
    which = backend()
    for h in range(1, hmax + 1):
        if use_python:
            best = _conic_ring_python((a, b, c, d, e, f), h)
            if best is not None:
                return best
        elif which == "numba":
            found, x, y, z = _conic_ring_numba(a, b, c, d, e, f, h)
            if found:
                return (x, y, z)
        else:
            found, x, y, z = _conic_ring_numpy(a, b, c, d, e, f, h)
            if found:
                return (x, y, z)
    return None


# --- surface point search ----------------------------------------------------
#
# Points of w^2 = f4(x, y, z) with |x|,|y|,|z| <= hmax; f4 given by its 15
# dense coefficients in the monomial order of surface.QUARTIC_MONOMIALS.


@njit(cache=True)
def _surface_scan_numba(co, hmax, out):  # pragma: no cover - jitted
    n = 0
    cap = out.shape[0]
    for x in range(-hmax, hmax + 1):
        for y in range(-hmax, hmax + 1):
            for z in range(-hmax, hmax + 1):
                if x == 0 and y == 0 and z == 0:
                    continue
                v = (co[0] * x ** 4 + co[1] * y ** 4 + co[2] * z ** 4
                     + co[3] * x ** 3 * y + co[4] * x ** 3 * z
                     + co[5] * x * y ** 3 + co[6] * y ** 3 * z
                     + co[7] * x * z ** 3 + co[8] * y * z ** 3
                     + co[9] * x ** 2 * y ** 2 + co[10] * x ** 2 * z ** 2
                     + co[11] * y ** 2 * z ** 2 + co[12] * x ** 2 * y * z
                     + co[13] * x * y ** 2 * z + co[14] * x * y * z ** 2)
                if v < 0:
                    continue
                s = int(math.sqrt(float(v)))
                while s * s > v:
                    s -= 1
                while (s + 1) * (s + 1) <= v:
                    s += 1
                if s * s == v and n < cap:
                    out[n, 0] = x
                    out[n, 1] = y
                    out[n, 2] = z
                    out[n, 3] = s
                    n += 1
    return n


def _surface_scan_numpy(co, hmax):
    rng = np.arange(-hmax, hmax + 1, dtype=np.int64)
    x, y, z = (g.ravel() for g in np.meshgrid(rng, rng, rng, indexing="ij"))
    v = (co[0] * x ** 4 + co[1] * y ** 4 + co[2] * z ** 4
         + co[3] * x ** 3 * y + co[4] * x ** 3 * z
         + co[5] * x * y ** 3 + co[6] * y ** 3 * z
         + co[7] * x * z ** 3 + co[8] * y * z ** 3
         + co[9] * x ** 2 * y ** 2 + co[10] * x ** 2 * z ** 2
         + co[11] * y ** 2 * z ** 2 + co[12] * x ** 2 * y * z
         + co[13] * x * y ** 2 * z + co[14] * x * y * z ** 2)
    nz = (x != 0) | (y != 0) | (z != 0)
    nonneg = (v >= 0) & nz
    s = np.zeros_like(v)
    s[nonneg] = np.sqrt(v[nonneg].astype(np.float64)).astype(np.int64)
    for _ in range(2):  # float sqrt can be off by one either way
        over = nonneg & (s * s > v)
        s[over] -= 1
        under = nonneg & ((s + 1) * (s + 1) <= v)
        s[under] += 1
    mask = nonneg & (s * s == v)
    return list(zip(x[mask].tolist(), y[mask].tolist(), z[mask].tolist(), s[mask].tolist()))


def _surface_scan_python(co, hmax):
    out = []
    for x in range(-hmax, hmax + 1):
        for y in range(-hmax, hmax + 1):
            for z in range(-hmax, hmax + 1):
                if x == y == z == 0:
                    continue
                v = (co[0] * x ** 4 + co[1] * y ** 4 + co[2] * z ** 4
                     + co[3] * x ** 3 * y + co[4] * x ** 3 * z
                     + co[5] * x * y ** 3 + co[6] * y ** 3 * z
                     + co[7] * x * z ** 3 + co[8] * y * z ** 3
                     + co[9] * x ** 2 * y ** 2 + co[10] * x ** 2 * z ** 2
                     + co[11] * y ** 2 * z ** 2 + co[12] * x ** 2 * y * z
                     + co[13] * x * y ** 2 * z + co[14] * x * y * z ** 2)
                if v >= 0 and math.isqrt(v) ** 2 == v:
                    out.append((x, y, z, math.isqrt(v)))
    return out


def surface_search(coeffs15: tuple[int, ...], hmax: int) -> list[tuple[int, int, int, int]]:
    """All (x, y, z, w >= 0) with w^2 = f4(x, y, z) in the height box."""
    co = tuple(int(v) for v in coeffs15)
    biggest = max(abs(v) for v in co) or 1
    if 15 * biggest * hmax ** 4 >= _FLOAT_EXACT:
        return _surface_scan_python(co, hmax)
    which = backend()
    if which == "numba":
        arr = np.array(co, dtype=np.int64)
        out = np.empty(((2 * hmax + 1) ** 3, 4), dtype=np.int64)
        n = _surface_scan_numba(arr, hmax, out)
        return [tuple(int(u) for u in row) for row in out[:n]]
    return _surface_scan_numpy(np.array(co, dtype=np.int64), hmax)
