"""The bi-conic surface w^2 = q^2 + r1 r2 in P(1,1,1,2).

Both conic fibrations share one pencil of plane conics
D_[s:t] = s^2 r1 + 2st q - t^2 r2; a fiber is the sign-tagged sheet over a
pencil member, with w recovered affinely from the plane point:

    t w = eps (t q + s r1)        s w = eps (t r2 - s q)

(eps = +1 for the first fibration, -1 for the second).  Everything below is
exact rational / number-field arithmetic.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import _kernels, linalg
from .conic import (ConicClassification, TernaryQuadraticForm, ZeroCyclePoint,
                    classify_form, intersect_conics)
from .errors import (DegenerateData, IdenticallySingularPencil,
                     IndeterminatePoint, PointNotOnSurface, SingularFiber,
                     NoRationalPoint, BiconicError)
from .intmath import primitive_tuple
from .numberfield import NFElt, NumberField, QQ, number_field, roots_in_field
from .polys import (BinaryForm, QQ0, QQ1, binary_gcd, binary_resultant,
                    det_form_matrix, interpolate, pdeg, pgcd, pstrip, wronskian)

# dense ternary quartic monomials, in the order the search kernels expect
QUARTIC_MONOMIALS = [
    (4, 0, 0), (0, 4, 0), (0, 0, 4),
    (3, 1, 0), (3, 0, 1), (1, 3, 0), (0, 3, 1), (1, 0, 3), (0, 1, 3),
    (2, 2, 0), (2, 0, 2), (0, 2, 2),
    (2, 1, 1), (1, 2, 1), (1, 1, 2),
]


# --- tiny exact multivariate polynomials (construction-time checks only) ------


def _mp_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for ea, ca in f.items():
        for eb, cb in g.items():
            key = tuple(a + b for a, b in zip(ea, eb))
            out[key] = out.get(key, QQ0) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def _mp_add(f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        out[e] = out.get(e, QQ0) + c
    return {k: v for k, v in out.items() if v != 0}


def _mp_scale(f: dict, c) -> dict:
    return {} if c == 0 else {e: v * c for e, v in f.items()}


def _quadric_dict(q: TernaryQuadraticForm, nvars: int) -> dict:
    a, b, c, d, e, f = q.coeffs
    mono = {
        (2, 0, 0): a, (0, 2, 0): b, (0, 0, 2): c,
        (1, 1, 0): d, (1, 0, 1): e, (0, 1, 1): f,
    }
    return {k + (0,) * (nvars - 3): v for k, v in mono.items() if v != 0}


def _var(nvars: int, i: int) -> dict:
    e = [0] * nvars
    e[i] = 1
    return {tuple(e): QQ1}


# --- points --------------------------------------------------------------------


class SurfacePoint:
    """Integer point (x, y, z, w) with weights (1,1,1,2), stored primitively
    (no lambda with lambda | x,y,z and lambda^2 | w) and sign-normalized."""

    __slots__ = ("x", "y", "z", "w")

    def __init__(self, x: int, y: int, z: int, w: int):
        x, y, z, w = int(x), int(y), int(z), int(w)
        if x == 0 and y == 0 and z == 0:
            raise ValueError("(0,0,0,w) is not a point of the weighted plane")
        g = math.gcd(math.gcd(abs(x), abs(y)), abs(z))
        if g > 1:
            lam = 1
            if w == 0:
                lam = g
            else:
                from .intmath import factorint
                for p, e in factorint(g).items():
                    ew = 0
                    ww = w
                    while ww % p == 0:
                        ww //= p
                        ew += 1
                    lam *= p ** min(e, ew // 2)
            x, y, z, w = x // lam, y // lam, z // lam, w // lam ** 2
        for c in (x, y, z):
            if c != 0:
                if c < 0:
                    x, y, z = -x, -y, -z
                break
        self.x, self.y, self.z, self.w = x, y, z, w

    def coords(self) -> tuple[int, int, int, int]:
        return (self.x, self.y, self.z, self.w)

    def plane(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def height(self) -> int:
        return max(abs(self.x), abs(self.y), abs(self.z), abs(self.w))

    def negate_w(self) -> "SurfacePoint":
        return SurfacePoint(self.x, self.y, self.z, -self.w)

    def __eq__(self, other):
        return isinstance(other, SurfacePoint) and self.coords() == other.coords()

    def __hash__(self):
        return hash(self.coords())

    def __repr__(self):
        return f"[{self.x}:{self.y}:{self.z}:{self.w}]"


@dataclass(frozen=True)
class ClosedSurfacePoint:
    """A closed point of the weighted space: coordinates over a number field,
    normalized so the first nonzero plane coordinate is 1 (w scaled by the
    square)."""

    field: NumberField
    coords: tuple  # (x, y, z, w) as NFElt

    @staticmethod
    def make(k: NumberField, coords) -> "ClosedSurfacePoint":
        x, y, z, w = [k.element(c) for c in coords]
        for piv in (x, y, z):
            if not piv.is_zero():
                inv = piv.inverse()
                x, y, z = x * inv, y * inv, z * inv
                w = w * inv * inv
                return ClosedSurfacePoint(k, (x, y, z, w))
        raise ValueError("plane coordinates all vanish")

    def degree(self) -> int:
        return self.field.degree

    def is_rational(self) -> bool:
        return self.field.is_rational_field() or all(c.is_rational() for c in self.coords)

    def to_surface_point(self) -> SurfacePoint:
        fr = [c.as_rational() for c in self.coords]
        den = 1
        for v in fr[:3]:
            den = den * v.denominator // math.gcd(den, v.denominator)
        den2 = fr[3].denominator
        # scale plane coords by lam, w by lam^2: choose lam clearing everything
        lam = den
        while (fr[3] * lam * lam).denominator != 1:
            lam *= den2
        return SurfacePoint(int(fr[0] * lam), int(fr[1] * lam), int(fr[2] * lam),
                            int(fr[3] * lam * lam))


_INVARIANT_CACHE: dict = {}


def _point_invariants(p: ClosedSurfacePoint) -> tuple:
    """Canonical Galois-orbit invariants: characteristic polynomials of the
    normalized coordinates and of a fixed combination.  Cheap to compare;
    equality of closed points implies equality of invariants."""
    from .numberfield import charpoly

    key = (p.field.modulus, p.coords)
    got = _INVARIANT_CACHE.get(key)
    if got is None:
        x, y, z, w = p.coords
        combo = y + 3 * z + 5 * w
        got = tuple(tuple(charpoly(c)) for c in (x, y, z, w, combo))
        _INVARIANT_CACHE[key] = got
    return got


def closed_points_equal(p1: ClosedSurfacePoint, p2: ClosedSurfacePoint) -> bool:
    """Equality of closed points (Galois orbits), across presentations."""
    if p1.degree() != p2.degree():
        return False
    if p1.is_rational() and p2.is_rational():
        return p1.to_surface_point() == p2.to_surface_point()
    if p1.field == p2.field and p1.coords == p2.coords:
        return True
    if _point_invariants(p1) != _point_invariants(p2):
        return False
    # rare: invariants agree, so decide definitively by embedding p2's field
    # into p1's (each root of p2's modulus in p1's field gives an embedding)
    for rho in roots_in_field(list(p2.field.modulus), p1.field):
        emb = tuple(_eval_residue(c, rho) for c in p2.coords)
        if emb == p1.coords:
            return True
    return False


def _eval_residue(c: NFElt, rho: NFElt) -> NFElt:
    out = rho.field.zero()
    for coeff in reversed(c.coeffs):
        out = out * rho + coeff
    return out


# --- the surface ----------------------------------------------------------------


class BiConicSurface:
    """w^2 = f4(x,y,z) with f4 = q^2 + r1 r2, carrying the two fibrations."""

    def __init__(self, q: TernaryQuadraticForm, r1: TernaryQuadraticForm,
                 r2: TernaryQuadraticForm):
        if r1.is_zero() or r2.is_zero():
            raise DegenerateData("r1 and r2 must be nonzero")
        self.q, self.r1, self.r2 = q, r1, r2
        f4 = _mp_add(_mp_mul(_quadric_dict(q, 3), _quadric_dict(q, 3)),
                     _mp_mul(_quadric_dict(r1, 3), _quadric_dict(r2, 3)))
        if not f4:
            raise DegenerateData("branch quartic q^2 + r1 r2 vanishes identically")
        self.f4_coeffs = tuple(f4.get(m, QQ0) for m in QUARTIC_MONOMIALS)
        self._verify_sheet_identity()
        gq, g1, g2 = q.gram(), r1.gram(), r2.gram()
        self.pencil_gram = [[BinaryForm(2, [g1[i][j], 2 * gq[i][j], -g2[i][j]])
                             for j in range(3)] for i in range(3)]
        disc = det_form_matrix(self.pencil_gram, 6)
        if disc.is_zero():
            raise DegenerateData("identically singular pencil") from \
                IdenticallySingularPencil("det of the pencil Gram matrix is 0")
        self.disc = disc
        self._smooth_report = None

    def _verify_sheet_identity(self):
        # (t q + s r1)^2 - t^2 (q^2 + r1 r2) == r1 (s^2 r1 + 2 s t q - t^2 r2)
        # in Q[x, y, z, s, t]; the w-sign squares away.  Fails loudly if not.
        n = 5
        q = _quadric_dict(self.q, n)
        r1 = _quadric_dict(self.r1, n)
        r2 = _quadric_dict(self.r2, n)
        s, t = _var(n, 3), _var(n, 4)
        lift = _mp_add(_mp_mul(t, q), _mp_mul(s, r1))
        lhs = _mp_add(_mp_mul(lift, lift),
                      _mp_scale(_mp_mul(_mp_mul(t, t),
                                        _mp_add(_mp_mul(q, q), _mp_mul(r1, r2))), -1))
        pencil = _mp_add(_mp_add(_mp_mul(_mp_mul(s, s), r1),
                                 _mp_scale(_mp_mul(_mp_mul(s, t), q), 2)),
                         _mp_scale(_mp_mul(_mp_mul(t, t), r2), -1))
        rhs = _mp_mul(r1, pencil)
        if _mp_add(lhs, _mp_scale(rhs, -1)):
            raise DegenerateData("sheet identity failed (construction bug)")

    # --- basic evaluation ---------------------------------------------------

    def f4(self, x, y, z) -> Fraction:
        out = Fraction(0)
        for (i, j, k), c in zip(QUARTIC_MONOMIALS, self.f4_coeffs):
            if c != 0:
                out += c * x ** i * y ** j * z ** k
        return out

    def f4_integer_coeffs(self) -> tuple[int, ...]:
        if any(c.denominator != 1 for c in self.f4_coeffs):
            raise ValueError("branch quartic has non-integer coefficients")
        return tuple(int(c) for c in self.f4_coeffs)

    def contains(self, p: SurfacePoint) -> bool:
        return Fraction(p.w) ** 2 == self.f4(p.x, p.y, p.z)

    def require_point(self, p: SurfacePoint):
        if not self.contains(p):
            raise PointNotOnSurface(f"{p} does not satisfy w^2 = f4")

    # --- fibration values -----------------------------------------------------

    def fibration_forms(self, p: SurfacePoint) -> tuple[Fraction, ...]:
        """(g1, g2, h1, h2) at the point."""
        x, y, z, w = p.coords()
        qv = self.q(x, y, z)
        return (w - qv, w + qv, self.r1(x, y, z), self.r2(x, y, z))


def build_surface(q: TernaryQuadraticForm, r1: TernaryQuadraticForm,
                  r2: TernaryQuadraticForm) -> BiConicSurface:
    return BiConicSurface(q, r1, r2)


# --- base parameters and fibers ---------------------------------------------------


def normalize_param(s: Fraction, t: Fraction) -> tuple[int, int]:
    s, t = Fraction(s), Fraction(t)
    if s == 0 and t == 0:
        raise ValueError("[0:0] is not a base parameter")
    den = s.denominator * t.denominator // math.gcd(s.denominator, t.denominator)
    return primitive_tuple((int(s * den), int(t * den)))


def eval_fibration(surf: BiConicSurface, i: int, p: SurfacePoint) -> tuple[int, int]:
    """pi_i(p) in P^1: [g1 : h1] (fallback [h2 : g2]) for i = 1,
    [-g2 : h1] (fallback [-h2 : g1]) for i = 2."""
    surf.require_point(p)
    g1, g2, h1, h2 = surf.fibration_forms(p)
    if i == 1:
        pairs = [(g1, h1), (h2, g2)]
    elif i == 2:
        pairs = [(-g2, h1), (-h2, g1)]
    else:
        raise ValueError("fibration id must be 1 or 2")
    for s, t in pairs:
        if s != 0 or t != 0:
            return normalize_param(s, t)
    raise IndeterminatePoint(
        f"all of g1, g2, h1, h2 vanish at {p}; the surface is singular there")


class Fiber:
    """pi_i^{-1}([s:t]) as (plane conic D, sign, w-lift)."""

    __slots__ = ("surface", "i", "eps", "param", "conic", "rank")

    def __init__(self, surf: BiConicSurface, i: int, param: tuple[int, int]):
        if i not in (1, 2):
            raise ValueError("fibration id must be 1 or 2")
        s, t = primitive_tuple((int(param[0]), int(param[1])))
        self.surface = surf
        self.i = i
        self.eps = 1 if i == 1 else -1
        self.param = (s, t)
        cs = []
        for cq, c1, c2 in zip(surf.q.coeffs, surf.r1.coeffs, surf.r2.coeffs):
            cs.append(s * s * c1 + 2 * s * t * cq - t * t * c2)
        self.conic = TernaryQuadraticForm(*cs)
        self.rank = self.conic.rank()

    @property
    def smooth(self) -> bool:
        return self.rank == 3

    def w_lift(self, x, y, z):
        """The w-coordinate over a plane point of D (any field that embeds the
        rationals)."""
        s, t = self.param
        qv = self.surface.q(x, y, z)
        if t != 0:
            return self.eps * (t * qv + s * self.surface.r1(x, y, z)) * Fraction(1, t)
        return self.eps * (t * self.surface.r2(x, y, z) - s * qv) * Fraction(1, s)

    def lift_plane_point(self, triple) -> SurfacePoint:
        """Integer plane point of D -> surface point on this sheet."""
        x, y, z = triple
        w = self.w_lift(Fraction(x), Fraction(y), Fraction(z))
        lam = w.denominator
        pt = SurfacePoint(x * lam, y * lam, z * lam, int(w * lam * lam))
        self.surface.require_point(pt)
        return pt

    def __repr__(self):
        return f"Fiber(pi_{self.i}, [{self.param[0]}:{self.param[1]}], rank {self.rank})"


def fiber_at(surf: BiConicSurface, i: int, param) -> Fiber:
    return Fiber(surf, i, param)


def discriminant_sextic(surf: BiConicSurface) -> BinaryForm:
    """Determinant of the pencil Gram matrix: a nonzero binary sextic whose
    roots are the parameters of singular pencil members."""
    if surf.disc.is_zero():
        raise IdenticallySingularPencil("det of the pencil Gram matrix is 0")
    return surf.disc


# --- singular fibers ----------------------------------------------------------------


@dataclass(frozen=True)
class FiberParameter:
    """A singular parameter: a root of an irreducible factor of the
    discriminant ([1:0] is the degree drop of the dehomogenization)."""

    field: NumberField
    factor: tuple          # monic irreducible factor (coefficients over Q), or () for [1:0]
    value: tuple           # (s, t) over the field: (theta, 1) or (1, 0)

    def is_infinity(self) -> bool:
        return self.factor == ()

    def label(self) -> str:
        if self.is_infinity():
            return "[1:0]"
        if self.field.is_rational_field():
            u = self.value[0].as_rational()
            s, t = normalize_param(u, Fraction(1))
            return f"[{s}:{t}]"
        return f"[u:1], u root of {_poly_label(self.factor)}"


def _poly_label(coeffs) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append(f"{c}*u" if c != 1 else "u")
        else:
            terms.append(f"{c}*u^{i}" if c != 1 else f"u^{i}")
    return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class SingularFiberReport:
    fibration: int
    parameter: FiberParameter
    multiplicity: int          # multiplicity in the discriminant
    rank: int
    classification: str        # split | nonsplit | rank1-degenerate
    node: tuple | None = None              # plane node over the parameter field
    node_lift: ClosedSurfacePoint | None = None
    split: bool | None = None
    splitting_disc: object | None = None
    splitting_label: str | None = None
    repeated_line: tuple | None = None


def singular_parameters(surf: BiConicSurface) -> list[tuple[FiberParameter, int]]:
    """Roots of the discriminant, one entry per irreducible factor."""
    from .factorization import factor_monic_rational

    disc = surf.disc
    out: list[tuple[FiberParameter, int]] = []
    dense = disc.dense_s()
    drop = disc.degree - pdeg(dense)
    if drop > 0:
        out.append((FiberParameter(QQ, (), (QQ.one(), QQ.zero())), drop))
    monic = [c / dense[-1] for c in dense]
    for fac, mult in factor_monic_rational(monic):
        if pdeg(fac) == 1:
            k = QQ
            val = (k.element(-fac[0]), k.one())
        else:
            k = number_field(fac)
            val = (k.gen(), k.one())
        out.append((FiberParameter(k, tuple(fac), val), mult))
    return out


def _pencil_conic_over(surf: BiConicSurface, k: NumberField, s: NFElt, t: NFElt):
    """Coefficients of D_[s:t] over the field k."""
    out = []
    for cq, c1, c2 in zip(surf.q.coeffs, surf.r1.coeffs, surf.r2.coeffs):
        out.append(s * s * c1 + 2 * (s * t) * cq - t * t * c2)
    return tuple(out)


def _eval_quadric_over(q: TernaryQuadraticForm, v, k: NumberField):
    a, b, c, d, e, f = [k.element(u) for u in q.coeffs]
    x, y, z = v
    return (a * x * x + b * y * y + c * z * z + d * x * y + e * x * z + f * y * z)


def _w_lift_over(surf: BiConicSurface, eps: int, s, t, v, k: NumberField):
    qv = _eval_quadric_over(surf.q, v, k)
    if not (k.element(t)).is_zero():
        r1v = _eval_quadric_over(surf.r1, v, k)
        return (t * qv + s * r1v) * k.element(eps) / t
    r2v = _eval_quadric_over(surf.r2, v, k)
    return (t * r2v - s * qv) * k.element(eps) / s


def singular_fiber_table(surf: BiConicSurface, i: int) -> list[SingularFiberReport]:
    """Classify every singular pencil member over its field of definition,
    with the node lifted to the surface on the sheet of fibration i."""
    eps = 1 if i == 1 else -1
    reports = []
    for par, mult in singular_parameters(surf):
        k = par.field
        s, t = par.value
        cls = classify_form(_pencil_conic_over(surf, k, s, t), k)
        if cls.rank == 2:
            w = _w_lift_over(surf, eps, s, t, cls.node, k)
            lift = ClosedSurfacePoint.make(k, (*cls.node, w))
            label = "split" if cls.split else "nonsplit"
            reports.append(SingularFiberReport(
                fibration=i, parameter=par, multiplicity=mult, rank=2,
                classification=label, node=cls.node, node_lift=lift,
                split=cls.split, splitting_disc=cls.disc,
                splitting_label=cls.splitting_label))
        elif cls.rank == 1:
            reports.append(SingularFiberReport(
                fibration=i, parameter=par, multiplicity=mult, rank=1,
                classification="rank1-degenerate", repeated_line=cls.repeated_line))
        else:
            raise BiconicError("rank-0 pencil member on a valid surface")
    return reports


def bad_locus(surf: BiConicSurface, i: int) -> list[ClosedSurfacePoint]:
    """Singular points of singular fibers of pi_i (node lifts).  Rank-1
    members contribute a SurfaceSingular warning instead of points."""
    out = []
    for rep in singular_fiber_table(surf, i):
        if rep.rank == 2:
            out.append(rep.node_lift)
        else:
            warnings.warn("rank-1 pencil member: the surface is singular along "
                          "this fiber's parameter", stacklevel=2)
    return out


# --- smoothness ---------------------------------------------------------------------


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    isolated: bool = True
    singular_points: tuple = ()           # ClosedSurfacePoint (w = 0)
    note: str = ""


def _f4_dict(surf: BiConicSurface) -> dict:
    return {m: c for m, c in zip(QUARTIC_MONOMIALS, surf.f4_coeffs) if c != 0}


def _mp_shear(f: dict, a: int, b: int) -> dict:
    """f(x + a z, y + b z, z) for a ternary exponent dict."""
    out: dict = {}
    for (i, j, k), c in f.items():
        # (x + a z)^i (y + b z)^j z^k
        for p in range(i + 1):
            for q_ in range(j + 1):
                coeff = (c * math.comb(i, p) * math.comb(j, q_)
                         * Fraction(a) ** (i - p) * Fraction(b) ** (j - q_))
                if coeff == 0:
                    continue
                key = (p, q_, k + (i - p) + (j - q_))
                out[key] = out.get(key, QQ0) + coeff
    return {k2: v for k2, v in out.items() if v != 0}


def _mp_partial(f: dict, var: int) -> dict:
    out = {}
    for e, c in f.items():
        if e[var] == 0:
            continue
        e2 = list(e)
        e2[var] -= 1
        out[tuple(e2)] = c * e[var]
    return out


def _cubic_z_rows(f: dict) -> list[BinaryForm]:
    """A ternary cubic as z-coefficients: [z^3, z^2, z^1, z^0] binary forms in (x,y)."""
    rows = []
    for zdeg in (3, 2, 1, 0):
        d = 3 - zdeg
        coeffs = [QQ0] * (d + 1)
        for (i, j, k), c in f.items():
            if k == zdeg:
                coeffs[j] = c  # x^(d-j) y^j
        rows.append(BinaryForm(d, coeffs))
    return rows


def _res_z_cubics(f: dict, g: dict) -> BinaryForm:
    fr = _cubic_z_rows(f)
    gr = _cubic_z_rows(g)
    z = BinaryForm(0, [QQ0])
    mat = [
        [fr[0], fr[1], fr[2], fr[3], z, z],
        [z, fr[0], fr[1], fr[2], fr[3], z],
        [z, z, fr[0], fr[1], fr[2], fr[3]],
        [gr[0], gr[1], gr[2], gr[3], z, z],
        [z, gr[0], gr[1], gr[2], gr[3], z],
        [z, z, gr[0], gr[1], gr[2], gr[3]],
    ]
    return det_form_matrix(mat, 9)


def _mp_eval_z(f: dict, x0, y0, k: NumberField) -> list:
    """f(x0, y0, z) as a polynomial in z over k."""
    out = [k.zero() for _ in range(4)]
    for (i, j, kz), c in f.items():
        out[kz] = out[kz] + k.element(c) * x0 ** i * y0 ** j
    while out and out[-1].is_zero():
        out.pop()
    return out


def _small_singular_scan(parts: list[dict], bound: int = 6):
    pts = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            for z in range(-bound, bound + 1):
                if (x, y, z) == (0, 0, 0):
                    continue
                if all(_mp_value(p, x, y, z) == 0 for p in parts):
                    try:
                        t = primitive_tuple((x, y, z))
                    except ValueError:
                        continue
                    if t not in pts:
                        pts.append(t)
    return pts


def _mp_value(f: dict, x, y, z):
    return sum((c * Fraction(x) ** i * Fraction(y) ** j * Fraction(z) ** k
                for (i, j, k), c in f.items()), start=QQ0)


_SMOOTH_SHEARS = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (3, 1),
                  (1, 3), (2, 3), (3, 2), (4, 1), (1, 4), (5, 2), (2, 5),
                  (5, 3), (3, 4), (4, 3), (6, 1), (1, 6), (7, 2)]


def check_smooth(surf: BiConicSurface) -> SmoothnessReport:
    """Smoothness of X, equivalently of the branch quartic f4 = 0: the three
    partials have no common projective zero (Euler puts any such zero on the
    quartic).  Decided by resultant elimination in a generic projection."""
    if surf._smooth_report is not None:
        return surf._smooth_report
    from .factorization import factor_monic_rational

    f4 = _f4_dict(surf)
    report = None
    for a, b in _SMOOTH_SHEARS:
        g = _mp_shear(f4, a, b) if (a, b) != (0, 0) else f4
        parts = [_mp_partial(g, v) for v in range(3)]
        if any(not p for p in parts):
            report = _nonisolated_report(surf, f4)
            break
        if any(all(e[2] != 3 for e in p) for p in parts):
            continue  # some partial misses [0:0:1]; need z^3 terms for Res_z
        r12 = _res_z_cubics(parts[0], parts[1])
        r13 = _res_z_cubics(parts[0], parts[2])
        r23 = _res_z_cubics(parts[1], parts[2])
        if r12.is_zero() or r13.is_zero() or r23.is_zero():
            report = _nonisolated_report(surf, f4)
            break
        g12 = binary_gcd(r12, r13)
        if g12.degree == 0:
            report = SmoothnessReport(smooth=True)
            break
        gall = binary_gcd(g12, r23)
        if gall.degree == 0:
            report = SmoothnessReport(smooth=True)
            break
        pts = _sing_points_from_gcd(parts, gall, a, b)
        if pts is None:
            continue  # projection not generic enough; move the center
        report = SmoothnessReport(smooth=len(pts) == 0, isolated=True,
                                  singular_points=tuple(pts))
        break
    if report is None:
        raise BiconicError("no generic projection found for smoothness check")
    surf._smooth_report = report
    return report


def _sing_points_from_gcd(parts, gall: BinaryForm, a: int, b: int):
    from .factorization import factor_monic_rational

    pieces = []
    dense = gall.dense_s()
    if gall.degree - pdeg(dense) > 0:
        pieces.append((QQ, (QQ.one(), QQ.zero())))
    if pdeg(dense) > 0:
        for fac, _ in factor_monic_rational([c / dense[-1] for c in dense]):
            if pdeg(fac) == 1:
                pieces.append((QQ, (QQ.element(-fac[0]), QQ.one())))
            else:
                k = number_field(fac)
                pieces.append((k, (k.gen(), k.one())))
    out = []
    for k, (x0, y0) in pieces:
        polys = [_mp_eval_z(p, x0, y0, k) for p in parts]
        polys = [p for p in polys if p]
        if not polys:
            return None  # the whole line above (x0, y0) is singular
        h = polys[0]
        for p in polys[1:]:
            h = pgcd(h, p)
        if pdeg(h) == 0:
            continue  # spurious common root of the resultants
        if pdeg(h) > 1:
            return None  # two singular points share this projection: re-center
        z0 = -h[0] / h[1]
        # undo the shear: original point (x + a z, y + b z, z)
        x, y = x0 + a * z0, y0 + b * z0
        out.append(ClosedSurfacePoint.make(k, (x, y, z0, k.zero())))
    return out


def _nonisolated_report(surf: BiConicSurface, f4: dict) -> SmoothnessReport:
    parts = [_mp_partial(f4, v) for v in range(3)]
    pts = _small_singular_scan(parts)
    reps = tuple(ClosedSurfacePoint.make(QQ, (x, y, z, 0)) for x, y, z in pts[:4])
    return SmoothnessReport(smooth=False, isolated=False, singular_points=reps,
                            note="singular along a positive-dimensional locus")


# --- hypotheses and certificates ------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    point: SurfacePoint
    t1: tuple[int, int]
    t2: tuple[int, int]
    L1_label: str
    L2_label: str
    verdict: str = "f'_n not arithmetically surjective for all n >= 3"


@dataclass(frozen=True)
class NoCertificate:
    failed_condition: str


@dataclass(frozen=True)
class HypothesisReport:
    intersection_number: int
    condition_a: bool
    samples: tuple
    bad1: tuple
    bad2: tuple
    condition_b: bool
    witnesses: tuple             # ClosedSurfacePoint in both bad loci
    eckardt_counts: tuple        # one count per witness (always 4 here)
    certificates: tuple


def fiber_intersection_number(surf: BiConicSurface, p1, p2) -> int:
    """Intersection multiplicity of the pi_1 fiber over p1 with the pi_2
    fiber over p2: plane intersection points of the two pencil members whose
    two w-lifts agree, counted with multiplicity."""
    f1 = Fiber(surf, 1, p1)
    f2 = Fiber(surf, 2, p2)
    cycle = intersect_conics(f1.conic, f2.conic)
    total = 0
    for pt in cycle:
        k = pt.field
        v = pt.coords
        s1, t1 = [k.element(c) for c in (f1.param[0], f1.param[1])]
        s2, t2 = [k.element(c) for c in (f2.param[0], f2.param[1])]
        w1 = _w_lift_over(surf, f1.eps, s1, t1, v, k)
        w2 = _w_lift_over(surf, f2.eps, s2, t2, v, k)
        if w1 == w2:
            total += pt.degree() * pt.multiplicity
    return total


def _sample_smooth_params(surf: BiConicSurface, rng: random.Random, n: int):
    out: list[tuple[int, int]] = []
    guard = 0
    while len(out) < n and guard < 1000:
        guard += 1
        s, t = rng.randint(1, 9), rng.randint(1, 9)
        if surf.disc(Fraction(s), Fraction(t)) == 0:
            continue
        p = primitive_tuple((s, t))
        if p not in out:
            out.append(p)
    return out


def bad_locus_intersection(surf: BiConicSurface) -> list[ClosedSurfacePoint]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        b1 = bad_locus(surf, 1)
        b2 = bad_locus(surf, 2)
    out = []
    for p in b1:
        if any(closed_points_equal(p, q) for q in b2):
            if not any(closed_points_equal(p, r) for r in out):
                out.append(p)
    return out


def obstruction_certificate(surf: BiConicSurface, p: SurfacePoint):
    """The non-surjectivity certificate at a rational point: requires p in
    Bad(pi_1) & Bad(pi_2) with both fibers through p nonsplit over Q."""
    surf.require_point(p)
    t1 = eval_fibration(surf, 1, p)
    t2 = eval_fibration(surf, 2, p)
    cls = []
    for i, ti in ((1, t1), (2, t2)):
        f = Fiber(surf, i, ti)
        c = classify_form(f.conic, QQ)
        if c.rank != 2:
            return NoCertificate(
                f"condition 1 fails: the pi_{i} fiber through the point has rank {c.rank}")
        node = ClosedSurfacePoint.make(
            QQ, (*c.node, _w_lift_over(surf, f.eps, QQ.element(ti[0]),
                                       QQ.element(ti[1]), c.node, QQ)))
        if node.to_surface_point() != p:
            return NoCertificate(
                f"condition 1 fails: the point is not the singular point of its pi_{i} fiber")
        cls.append(c)
    for i, c in ((1, cls[0]), (2, cls[1])):
        if c.split:
            return NoCertificate(f"condition 2 fails: the pi_{i} fiber is split over Q")
    return Certificate(point=p, t1=t1, t2=t2,
                       L1_label=cls[0].splitting_label,
                       L2_label=cls[1].splitting_label)


def check_hypotheses(surf: BiConicSurface, seed: int = 0) -> HypothesisReport:
    rng = random.Random(f"hypotheses:{seed}")
    samples = []
    nums = []
    pairs_needed = 3
    params = _sample_smooth_params(surf, rng, 2 * pairs_needed)
    for i in range(pairs_needed):
        p1, p2 = params[2 * i], params[2 * i + 1]
        n = fiber_intersection_number(surf, p1, p2)
        samples.append((p1, p2, n))
        nums.append(n)
    cond_a = all(n == 4 for n in nums) and all(n > 0 for n in nums)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        b1 = tuple(bad_locus(surf, 1))
        b2 = tuple(bad_locus(surf, 2))
    witnesses = tuple(bad_locus_intersection(surf))
    certs = []
    for wpt in witnesses:
        if wpt.is_rational():
            cert = obstruction_certificate(surf, wpt.to_surface_point())
            if isinstance(cert, Certificate):
                certs.append(cert)
    return HypothesisReport(
        intersection_number=4 if cond_a else (nums[0] if nums else 0),
        condition_a=cond_a, samples=tuple(samples),
        bad1=b1, bad2=b2,
        condition_b=len(witnesses) == 0, witnesses=witnesses,
        eckardt_counts=tuple(4 for _ in witnesses),
        certificates=tuple(certs))


# --- ramification of a restricted fibration ----------------------------------------


@dataclass(frozen=True)
class RamificationReport:
    fibration: int                  # the fibration whose fiber was restricted
    param: tuple[int, int]
    map_forms: tuple                # (A, B): degree-4 binary forms, primitive
    wronskian_form: BinaryForm      # degree 6, the ramification divisor
    wronskian_factors: tuple        # ((factor coeffs | () for [1:0], mult), ...)
    branch_form: BinaryForm         # degree-6 pushforward on the target P^1
    branch_factors: tuple


def _factor_binary(form: BinaryForm):
    from .factorization import factor_monic_rational

    dense = form.dense_s()
    out = []
    drop = form.degree - pdeg(dense)
    if drop > 0:
        out.append(((), drop))
    if pdeg(dense) > 0:
        for fac, mult in factor_monic_rational([c / dense[-1] for c in dense]):
            out.append((tuple(fac), mult))
    return tuple(out)


def ramification_of_restriction(surf: BiConicSurface, fib: Fiber,
                                point=None) -> RamificationReport:
    """Restrict the other fibration to a smooth fiber with a rational point:
    a degree-4 map P^1 -> P^1; return its ramification divisor (the degree-6
    Wronskian zero locus) and the branch locus pushed to the target."""
    from .conic import NoPoint, find_rational_point, parametrize

    if not fib.smooth:
        raise SingularFiber(f"fiber over {fib.param} has rank {fib.rank}")
    if point is None:
        got = find_rational_point(fib.conic)
        if isinstance(got, NoPoint):
            raise NoRationalPoint(f"no rational point on the fiber (witness {got.witness})")
        point = got
    par = parametrize(fib.conic, tuple(point))
    px, py, pz = par.forms
    s, t = fib.param
    qp = _compose_quadric_forms(surf.q, par.forms)
    r1p = _compose_quadric_forms(surf.r1, par.forms)
    r2p = _compose_quadric_forms(surf.r2, par.forms)
    eps = Fraction(fib.eps)
    if t != 0:
        wform = _bf_lin(qp, Fraction(eps), r1p, Fraction(eps * s, t))
    else:
        wform = _bf_lin(r2p, QQ0, qp, -eps)  # w = -eps * q on the t = 0 fiber
    j = 3 - fib.i
    if j == 1:
        a_form = _bf_lin(wform, QQ1, qp, Fraction(-1))   # g1 = w - q
        b_form = r1p
    else:
        a_form = _bf_lin(wform, Fraction(-1), qp, Fraction(-1))  # -g2 = -(w + q)
        b_form = r1p
    g = binary_gcd(a_form, b_form)
    if g.degree != 0:
        raise BiconicError(
            "restricted projection is not a coprime degree-4 pair on this fiber")
    a_form, b_form = _joint_primitive(a_form, b_form)
    wron = wronskian(a_form, b_form)
    if wron.is_zero():
        raise BiconicError("restricted projection is constant (unexpected)")
    branch = _pushforward_branch(wron, a_form, b_form)
    return RamificationReport(
        fibration=fib.i, param=fib.param,
        map_forms=(a_form, b_form),
        wronskian_form=wron, wronskian_factors=_factor_binary(wron),
        branch_form=branch, branch_factors=_factor_binary(branch))


def _compose_quadric_forms(q: TernaryQuadraticForm, forms) -> BinaryForm:
    from .conic import _compose_quadric
    return _compose_quadric(q, forms)


def _bf_lin(f: BinaryForm, cf: Fraction, g: BinaryForm, cg: Fraction) -> BinaryForm:
    assert f.degree == g.degree
    return BinaryForm(f.degree, [cf * a + cg * b for a, b in zip(f.coeffs, g.coeffs)])


def _joint_primitive(a: BinaryForm, b: BinaryForm) -> tuple[BinaryForm, BinaryForm]:
    den = 1
    for c in list(a.coeffs) + list(b.coeffs):
        den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for c in list(a.coeffs) + list(b.coeffs):
        num = math.gcd(num, int(c * den))
    scale = Fraction(den, num)
    return a.scale(scale), b.scale(scale)


def _pushforward_branch(wron: BinaryForm, a: BinaryForm, b: BinaryForm) -> BinaryForm:
    """Res_(u,v)(W, t A - s B) as a degree-6 form in (s, t) via interpolation."""
    pts = []
    for jj in range(7):
        sigma = Fraction(jj)
        pencil = _bf_lin(a, QQ1, b, -sigma)
        if pencil.is_zero():
            raise BiconicError("degenerate pencil member in branch pushforward")
        pts.append((sigma, binary_resultant(wron, pencil)))
    dense = interpolate(pts)
    return BinaryForm.from_dense_s(6, dense)


# --- bounded point search -------------------------------------------------------------


def search_points(surf: BiConicSurface, hmax: int) -> list[SurfacePoint]:
    """All surface points with plane height <= hmax, canonically sorted."""
    raw = _kernels.surface_search(surf.f4_integer_coeffs(), hmax)
    seen = set()
    out = []
    for x, y, z, w in raw:
        for ww in ((w, -w) if w != 0 else (0,)):
            p = SurfacePoint(x, y, z, ww)
            if p.coords() not in seen:
                seen.add(p.coords())
                out.append(p)
    out.sort(key=lambda p: (p.height(), p.coords()))
    return out
