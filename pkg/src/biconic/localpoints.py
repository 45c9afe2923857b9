"""Local (p-adic) points of a bi-conic surface at odd primes.

Residue points live in weighted projective space over Z/p^m, normalized so
the first plane coordinate that is a unit equals 1 (w rescales by the
square); on the surface the normalized reduction always has a unit plane
coordinate.  Only finite odd places appear here; p = 2 and the real place
are excluded from probes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadPrime, IncompatiblePrime, NotSmoothModP, PointNotOnSurface
from .intmath import valuation
from .surface import QUARTIC_MONOMIALS, BiConicSurface, SurfacePoint

INF = float("inf")  # sentinel only; never used in arithmetic


@dataclass(frozen=True)
class ResidueTarget:
    """Point of the reduction mod p^m, canonically normalized."""

    p: int
    m: int
    coords: tuple[int, int, int, int]
    smooth: bool

    def chart(self) -> int:
        for i, c in enumerate(self.coords[:3]):
            if c % self.p != 0:
                return i
        raise ValueError("no unit plane coordinate (not a surface residue)")

    def reduce(self, j: int) -> "ResidueTarget":
        if j > self.m:
            raise ValueError(f"target only known mod p^{self.m}")
        pj = self.p ** j
        return ResidueTarget(self.p, j, tuple(c % pj for c in self.coords), self.smooth)

    def serialize(self) -> str:
        x, y, z, w = self.coords
        return f"{self.p}^{self.m} : {x},{y},{z},{w}"


def _f4_mod(surf: BiConicSurface, x: int, y: int, z: int, mod: int) -> int:
    out = 0
    for (i, j, k), c in zip(QUARTIC_MONOMIALS, surf.f4_coeffs):
        if c == 0:
            continue
        num = c.numerator % mod
        if c.denominator != 1:
            num = num * pow(c.denominator, -1, mod) % mod
        out = (out + num * pow(x, i, mod) * pow(y, j, mod) * pow(z, k, mod)) % mod
    return out


def _grad_f4_mod(surf: BiConicSurface, x: int, y: int, z: int, mod: int) -> tuple[int, int, int]:
    gx = gy = gz = 0
    for (i, j, k), c in zip(QUARTIC_MONOMIALS, surf.f4_coeffs):
        if c == 0:
            continue
        num = c.numerator % mod
        if c.denominator != 1:
            num = num * pow(c.denominator, -1, mod) % mod
        if i:
            gx = (gx + num * i * pow(x, i - 1, mod) * pow(y, j, mod) * pow(z, k, mod)) % mod
        if j:
            gy = (gy + num * j * pow(x, i, mod) * pow(y, j - 1, mod) * pow(z, k, mod)) % mod
        if k:
            gz = (gz + num * k * pow(x, i, mod) * pow(y, j, mod) * pow(z, k - 1, mod)) % mod
    return gx, gy, gz


def _check_prime(surf: BiConicSurface, p: int):
    if p == 2 or p < 2:
        raise BadPrime("only odd primes are supported")
    for c in surf.f4_coeffs:
        if c.denominator % p == 0:
            raise BadPrime(f"p = {p} divides defining denominators")
    ints = [c.numerator for c in surf.f4_coeffs if c != 0]
    if all(v % p == 0 for v in ints):
        raise BadPrime(f"p = {p} divides the content of the branch quartic")


def is_smooth_residue(surf: BiConicSurface, p: int, coords) -> bool:
    x, y, z, w = coords
    gx, gy, gz = _grad_f4_mod(surf, x, y, z, p)
    return not (gx == 0 and gy == 0 and gz == 0 and (2 * w) % p == 0)


def enumerate_residues(surf: BiConicSurface, p: int) -> list[ResidueTarget]:
    """All points of the reduction mod p across the three plane charts,
    deduplicated by canonical normalization, with smooth flags."""
    _check_prime(surf, p)
    out = []
    sqrt_table: dict[int, list[int]] = {0: [0]}
    for r in range(1, p):
        sqrt_table.setdefault(r * r % p, []).append(r)
    for chart in range(3):
        if chart == 0:
            plane_pts = [(1, y, z) for y in range(p) for z in range(p)]
        elif chart == 1:
            plane_pts = [(0, 1, z) for z in range(p)]
        else:
            plane_pts = [(0, 0, 1)]
        for x, y, z in plane_pts:
            val = _f4_mod(surf, x, y, z, p)
            ws = [0] if val == 0 else sorted(sqrt_table.get(val, []))
            for w in ws:
                coords = (x, y, z, w)
                out.append(ResidueTarget(p, 1, coords,
                                         is_smooth_residue(surf, p, coords)))
    out.sort(key=lambda t: t.coords)
    return out


_LIFT_ORDER = (3, 2, 1, 0)  # prefer moving w, then z, then y, then x


def _lift_coordinate_choice(surf: BiConicSurface, t: ResidueTarget) -> int:
    p = t.p
    x, y, z, w = (c % p for c in t.coords)
    gx, gy, gz = _grad_f4_mod(surf, x, y, z, p)
    partials = {0: (-gx) % p, 1: (-gy) % p, 2: (-gz) % p, 3: (2 * w) % p}
    pivot = t.chart()
    for idx in _LIFT_ORDER:
        if idx != pivot and partials[idx] != 0:
            return idx
    raise NotSmoothModP(f"no unit partial at {t.coords} mod {p}")


def _newton_single(surf: BiConicSurface, coords: list[int], idx: int, p: int,
                   m_from: int, m_to: int) -> list[int] | None:
    """Newton on coordinate idx (others held fixed), from precision m_from."""
    k = m_from
    while k < m_to:
        k = min(2 * k, m_to)
        mod = p ** k
        c = coords[idx]
        for _ in range(2):  # Newton converges immediately; iterate defensively
            fval = _phi(surf, coords, idx, c, mod)
            if fval == 0:
                break
            dval = _dphi(surf, coords, idx, c, mod)
            if dval % p == 0:
                return None
            c = (c - fval * pow(dval, -1, mod)) % mod
        coords[idx] = c
    mod = p ** m_to
    coords = [v % mod for v in coords]
    if (coords[3] ** 2 - _f4_mod(surf, coords[0], coords[1], coords[2], mod)) % mod != 0:
        return None
    return coords


def lift_point(surf: BiConicSurface, t: ResidueTarget, m_target: int) -> ResidueTarget:
    """Hensel-lift a smooth residue point to precision m_target by Newton on
    one coordinate (the others held fixed); deterministic."""
    if not t.smooth:
        raise NotSmoothModP(f"{t.coords} is not a smooth residue point mod {t.p}")
    if m_target <= t.m:
        return t.reduce(m_target)
    p = t.p
    idx = _lift_coordinate_choice(surf, t)
    coords = _newton_single(surf, list(t.coords), idx, p, t.m, m_target)
    if coords is None:
        raise NotSmoothModP("Newton failed to converge (precision bookkeeping bug)")
    return ResidueTarget(p, m_target, tuple(coords), t.smooth)


def smooth_classes(surf: BiConicSurface, p: int, m: int) -> list[ResidueTarget]:
    """All smooth residue classes mod p^m: each smooth mod-p point refines to
    p^(2(m-1)) classes (two free coordinates; the Newton coordinate is
    determined)."""
    base = [t for t in enumerate_residues(surf, p) if t.smooth]
    if m == 1:
        return base
    out = []
    for t in base:
        idx = _lift_coordinate_choice(surf, t)
        piv = t.chart()
        free = [i for i in range(4) if i not in (piv, idx)]
        for d1 in range(p ** (m - 1)):
            for d2 in range(p ** (m - 1)):
                coords = list(t.coords)
                coords[free[0]] += d1 * p
                coords[free[1]] += d2 * p
                lifted = _newton_single(surf, coords, idx, p, 1, m)
                if lifted is not None:
                    out.append(ResidueTarget(p, m, tuple(lifted), True))
    out.sort(key=lambda r: r.coords)
    return out


def _phi(surf, coords, idx, c, mod):
    vals = list(coords)
    vals[idx] = c
    return (vals[3] ** 2 - _f4_mod(surf, vals[0], vals[1], vals[2], mod)) % mod


def _dphi(surf, coords, idx, c, mod):
    vals = list(coords)
    vals[idx] = c
    if idx == 3:
        return (2 * vals[3]) % mod
    g = _grad_f4_mod(surf, vals[0], vals[1], vals[2], mod)
    return (-g[idx]) % mod


def reduce_surface_point(pt: SurfacePoint, p: int, m: int,
                         surf: BiConicSurface | None = None) -> ResidueTarget:
    """Exact reduction of a rational surface point mod p^m, canonically
    normalized (requires a unit plane coordinate after p-normalization,
    which holds for points on the surface)."""
    x, y, z, w = pt.coords()
    vals = [valuation(c, p) if c else None for c in (x, y, z)]
    vw = valuation(w, p) if w else None
    plane_min = min(v for v in vals if v is not None) if any(v is not None for v in vals) else 0
    k = plane_min if vw is None else min(plane_min, vw // 2)
    x, y, z, w = x // p ** k, y // p ** k, z // p ** k, w // p ** (2 * k)
    if all(c % p == 0 for c in (x, y, z)):
        raise PointNotOnSurface(
            f"{pt} has no unit plane coordinate at p = {p}; not a surface point")
    piv = next(i for i, c in enumerate((x, y, z)) if c % p != 0)
    mod = p ** m
    lam = pow((x, y, z)[piv], -1, mod)
    coords = (x * lam % mod, y * lam % mod, z * lam % mod, w * lam * lam % mod)
    smooth = surf is not None and is_smooth_residue(surf, p, coords)
    return ResidueTarget(p, m, coords, smooth)


def padic_distance(a, b, p: int, surf: BiConicSurface | None = None):
    """Largest j <= min(precisions) with a = b mod p^j after canonical chart
    normalization; INF when both are exact and equal (symmetric)."""
    exact_a = isinstance(a, SurfacePoint)
    exact_b = isinstance(b, SurfacePoint)
    if (not exact_a and a.p != p) or (not exact_b and b.p != p):
        raise IncompatiblePrime("mismatched primes")
    if exact_a and exact_b and a == b:
        return INF
    if exact_a and exact_b:
        probe = 64
        while True:
            j = _agreement(a, b, p, probe, surf)
            if j < probe:
                return j
            probe *= 2  # distinct points separate at some finite precision
    cap = min(x.m for x in (a, b) if isinstance(x, ResidueTarget))
    return min(_agreement(a, b, p, cap, surf), cap)


def _agreement(a, b, p: int, probe: int, surf) -> int:
    ra = reduce_surface_point(a, p, probe, surf) if isinstance(a, SurfacePoint) \
        else a.reduce(min(probe, a.m))
    rb = reduce_surface_point(b, p, probe, surf) if isinstance(b, SurfacePoint) \
        else b.reduce(min(probe, b.m))
    if ra.chart() != rb.chart():
        return 0
    j = probe
    mod = p ** probe
    for ca, cb in zip(ra.coords, rb.coords):
        d = (ca - cb) % mod
        if d != 0:
            j = min(j, valuation(d, p))
    return j
