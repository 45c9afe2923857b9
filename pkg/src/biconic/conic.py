"""Plane conics: classification, local and global solvability, rational
points by descent, stereographic parametrization, and conic-conic
intersection as an exact zero-cycle.

Everything is exact.  Rational conics are ``TernaryQuadraticForm``; the
classification routine also accepts coefficient tuples over a number field
(used for singular fibers at irrational parameters).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _kernels, linalg
from .errors import (CommonComponent, DegenerateConic, PointNotOnConic,
                     SearchBudgetExceeded, ZeroForm)
from .factorization import factor_monic_rational
from .hilbert import REAL, hilbert_symbol
from .intmath import (crt, factorint, primitive_tuple, sqrt_mod_prime,
                      squarefree_part)
from .numberfield import (NFElt, NumberField, QQ, is_square_in_numberfield,
                          number_field, splitting_field_label)
from .polys import BinaryForm, QQ0, QQ1, det_form_matrix, pdeg, pgcd, pstrip

HALF = Fraction(1, 2)


class TernaryQuadraticForm:
    """a x^2 + b y^2 + c z^2 + d xy + e xz + f yz with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, a, b, c, d=0, e=0, f=0):
        self.coeffs = tuple(Fraction(v) for v in (a, b, c, d, e, f))

    def __call__(self, x, y, z):
        a, b, c, d, e, f = self.coeffs
        return (a * x * x + b * y * y + c * z * z
                + d * x * y + e * x * z + f * y * z)

    def __eq__(self, other):
        return isinstance(other, TernaryQuadraticForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TernaryQuadraticForm{self.coeffs}"

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs)

    def gram(self) -> list[list[Fraction]]:
        a, b, c, d, e, f = self.coeffs
        return [[a, d * HALF, e * HALF],
                [d * HALF, b, f * HALF],
                [e * HALF, f * HALF, c]]

    def rank(self) -> int:
        if self.is_zero():
            return 0
        return linalg.rank(self.gram())

    def integer_coeffs(self) -> tuple[int, ...]:
        """Primitive integer coefficient vector (same zero locus)."""
        den = 1
        for v in self.coeffs:
            den = den * v.denominator // math.gcd(den, v.denominator)
        ints = [int(v * den) for v in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        ints = [v // g for v in ints]
        for v in ints:
            if v != 0:
                if v < 0:
                    ints = [-u for u in ints]
                break
        return tuple(ints)

    def scale(self, c) -> "TernaryQuadraticForm":
        return TernaryQuadraticForm(*(v * Fraction(c) for v in self.coeffs))

    def bilinear(self, u, v) -> Fraction:
        """Associated bilinear form: B(u, v) = (Q(u+v) - Q(u) - Q(v)) / 2."""
        m = self.gram()
        return sum(u[i] * sum(m[i][j] * v[j] for j in range(3)) for i in range(3))


@dataclass(frozen=True)
class ConicClassification:
    field: NumberField
    rank: int
    node: tuple | None = None            # rank 2: spans the radical
    split: bool | None = None            # rank 2 only
    disc: object | None = None           # discriminant of the binary part
    splitting_label: str | None = None   # "Q(sqrt(d))" over the rationals
    repeated_line: tuple | None = None   # rank 1


def _gram_over(coeffs6, k: NumberField):
    a, b, c, d, e, f = [k.element(v) for v in coeffs6]
    h = HALF
    return [[a, d * h, e * h],
            [d * h, b, f * h],
            [e * h, f * h, c]]


def _normalize_vec(vec, k: NumberField):
    for v in vec:
        if not (v == 0):
            inv = v.inverse() if isinstance(v, NFElt) else 1 / v
            return tuple(x * inv for x in vec)
    raise ZeroForm("zero vector")


def classify_form(q, k: NumberField = QQ) -> ConicClassification:
    """Rank, node and splitness data for a conic over the field k.

    q is a TernaryQuadraticForm (rational) or a 6-tuple of k-elements in the
    order (a, b, c, d, e, f).
    """
    coeffs = q.coeffs if isinstance(q, TernaryQuadraticForm) else tuple(q)
    m = _gram_over(coeffs, k)
    if all(all(e == 0 for e in row) for row in m):
        raise ZeroForm("conic is identically zero")
    rk = linalg.rank(m)
    if rk == 3:
        return ConicClassification(field=k, rank=3)
    if rk == 2:
        ker = linalg.kernel(m, k.one())
        assert len(ker) == 1
        node = _normalize_vec(ker[0], k)
        piv = next(i for i, v in enumerate(node) if not (v == 0))
        comp = [i for i in range(3) if i != piv]
        i, j = comp
        # binary form on the complement of the radical; the complement choice
        # does not move the square class of the discriminant
        aa, bb, cc = m[i][i], 2 * m[i][j], m[j][j]
        disc = bb * bb - 4 * aa * cc
        split = is_square_in_numberfield(k, disc)
        label = None
        if k.is_rational_field():
            label = splitting_field_label(k.element(disc).as_rational())
        return ConicClassification(field=k, rank=2, node=node, split=split,
                                   disc=disc, splitting_label=label)
    # rank 1: a doubled line, read off a nonzero row of the Gram matrix
    for row in m:
        if any(not (e == 0) for e in row):
            return ConicClassification(field=k, rank=1,
                                       repeated_line=_normalize_vec(tuple(row), k))
    raise ZeroForm("unreachable")


# --- diagonalization and local solvability -----------------------------------


def diagonalize(q: TernaryQuadraticForm) -> tuple[list[Fraction], list[list[Fraction]]]:
    """(diag, T) with T^t M T diagonal; Q(T u) = sum diag[i] u_i^2."""
    m = [row[:] for row in q.gram()]
    t = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]

    def col_swap(i, j):
        for r in range(3):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        m[i], m[j] = m[j], m[i]
        for r in range(3):
            t[r][i], t[r][j] = t[r][j], t[r][i]

    def col_add(dst, src, f):
        # column_dst += f * column_src, symmetrically
        for r in range(3):
            m[r][dst] += f * m[r][src]
        for c in range(3):
            m[dst][c] += f * m[src][c]
        for r in range(3):
            t[r][dst] += f * t[r][src]

    for i in range(3):
        if m[i][i] == 0:
            for j in range(i + 1, 3):
                if m[j][j] != 0:
                    col_swap(i, j)
                    break
            else:
                # all remaining diagonal entries vanish: create one from an
                # off-diagonal entry (Q(e_r + e_c) = 2 m[r][c])
                pair = next(((r, c) for r in range(i, 3) for c in range(r + 1, 3)
                             if m[r][c] != 0), None)
                if pair is None:
                    break  # remaining block is zero
                r, c = pair
                col_add(r, c, Fraction(1))
                if r != i:
                    col_swap(i, r)
        for j in range(i + 1, 3):
            if m[i][j] != 0:
                col_add(j, i, -m[i][j] / m[i][i])
    return [m[0][0], m[1][1], m[2][2]], t


def _reduced_diagonal(q: TernaryQuadraticForm):
    """Squarefree, pairwise-coprime integer diagonal (a, b, c) plus the chain
    of solution transforms mapping a reduced solution back to q's coordinates."""
    diag, t = diagonalize(q)
    if any(d == 0 for d in diag):
        raise DegenerateConic(f"rank {q.rank()} < 3")
    # clear denominators (multiply the form by a square is harmless)
    den = 1
    for d in diag:
        den = den * d.denominator // math.gcd(den, d.denominator)
    ints = [int(d * den ** 2) for d in diag]
    # strip square parts: a_i = s_i * k_i^2 ; u_i = k_i v_i
    ks = []
    ss = []
    for v in ints:
        s = squarefree_part(v)
        k = math.isqrt(abs(v // s))
        ss.append(s)
        ks.append(k)
    transforms = []  # applied in reverse to map solutions back

    def scale_back(sol, ks=tuple(ks)):
        kk = ks[0] * ks[1] * ks[2]
        return (sol[0] * kk // ks[0], sol[1] * kk // ks[1], sol[2] * kk // ks[2])

    transforms.append(scale_back)
    # common prime factors of all three
    changed = True
    while changed:
        changed = False
        g = math.gcd(math.gcd(ss[0], ss[1]), ss[2])
        if g > 1:
            p = min(factorint(g))
            ss = [s // p for s in ss]  # scale the form; solutions unchanged
            changed = True
    # pairwise
    changed = True
    while changed:
        changed = False
        for i in range(3):
            for j in range(i + 1, 3):
                g = math.gcd(ss[i], ss[j])
                if g > 1:
                    p = min(factorint(g))
                    kk = 3 - i - j
                    ss[i] //= p
                    ss[j] //= p
                    ss[kk] *= p

                    def tf(sol, kk=kk, p=p):
                        out = list(sol)
                        out[kk] *= p
                        return tuple(out)

                    transforms.append(tf)
                    changed = True
    return ss, transforms, t


def local_solvable(q: TernaryQuadraticForm, place) -> bool:
    """Solvability of Q = 0 over the completion at the place (rank 3 only)."""
    ss, _, _ = _reduced_diagonal(q)
    a, b, c = ss
    return hilbert_symbol(Fraction(-a * c), Fraction(-b * c), place) == 1


def _hasse_places(ss) -> list:
    # odd primes first: a failure at an odd prime is the more informative witness
    places = [REAL]
    for p in sorted(factorint(abs(ss[0] * ss[1] * ss[2]))):
        if p != 2:
            places.append(p)
    places.append(2)
    return places


@dataclass(frozen=True)
class NoPoint:
    """Witness that the conic has no rational point: a failing place."""
    witness: object


def _lagrange_descent(B: int, C: int) -> tuple[int, int, int]:
    """Nonzero integer solution of X^2 = B Y^2 + C Z^2 for squarefree B, C,
    assuming solvability (prechecked by Hilbert symbols)."""
    if B == 1:
        return (1, 1, 0)
    if C == 1:
        return (1, 0, 1)
    sb = math.isqrt(abs(B))
    if B > 0 and sb * sb == B:
        return (sb, 1, 0)
    sc = math.isqrt(abs(C))
    if C > 0 and sc * sc == C:
        return (sc, 0, 1)
    if abs(B) > abs(C):
        x, z, y = _lagrange_descent(C, B)
        return (x, y, z)
    # now 1 < |C|, |B| <= |C|, neither a square
    assert not (B == -1 and C == -1), "definite form slipped through prechecks"
    absC = abs(C)
    residues, moduli = [], []
    for p in sorted(factorint(absC)):
        if p == 2:
            residues.append(B % 2)
            moduli.append(2)
            continue
        if B % p == 0:
            residues.append(0)
        else:
            r = sqrt_mod_prime(B, p)
            assert r is not None, "local solvability violated during descent"
            residues.append(r)
        moduli.append(p)
    t = crt(residues, moduli)
    if 2 * t > absC:
        t -= absC
    m = (t * t - B) // C
    assert m * C == t * t - B
    assert m != 0
    m1 = squarefree_part(m)
    k = math.isqrt(abs(m // m1))
    x1, y1, z1 = _lagrange_descent(B, m1)
    x = x1 * t + B * y1
    y = x1 + t * y1
    z = m1 * k * z1
    g = math.gcd(math.gcd(abs(x), abs(y)), abs(z))
    if g > 1:
        x, y, z = x // g, y // g, z // g
    assert x * x - B * y * y == C * z * z
    return (x, y, z)


def find_rational_point(q: TernaryQuadraticForm, use_descent: bool = True,
                        search_bound: int = 10 ** 4):
    """A rational point on a rank-3 conic, or NoPoint with a failing place.

    With descent enabled the method is complete (Legendre/Hasse); with
    descent disabled a bounded lattice search is used and exhausting it
    raises SearchBudgetExceeded.
    """
    ss, transforms, t = _reduced_diagonal(q)
    a, b, c = ss
    if a > 0 and b > 0 and c > 0 or a < 0 and b < 0 and c < 0:
        return NoPoint(REAL)
    for place in _hasse_places(ss):
        if hilbert_symbol(Fraction(-a * c), Fraction(-b * c), place) != 1:
            return NoPoint(place)
    if not use_descent:
        sol = _kernels.conic_search(q.integer_coeffs(), search_bound)
        if sol is None:
            raise SearchBudgetExceeded(
                f"no point of height <= {search_bound} on a locally solvable conic")
        pt = primitive_tuple(sol)
        assert q(*pt) == 0
        return pt
    # descent on X^2 = (-ab) Y^2 + (-ac) Z^2, then back to the ternary form
    X, Y, Z = _lagrange_descent(-a * b, -a * c)
    sol = (X, a * Y, a * Z)
    assert a * sol[0] ** 2 + b * sol[1] ** 2 + c * sol[2] ** 2 == 0
    for tf in reversed(transforms):
        sol = tf(sol)
    # back through the diagonalizing substitution x = T u
    vec = [sum(t[r][i] * sol[i] for i in range(3)) for r in range(3)]
    den = 1
    for v in vec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    pt = primitive_tuple(tuple(int(v * den) for v in vec))
    assert q(*pt) == 0, "descent produced an invalid point"
    return pt


# --- parametrization ----------------------------------------------------------


class ConicParametrization:
    """Stereographic projection from a rational point: three degree-2 binary
    forms mapping [u : v] bijectively onto the conic, attaining the base point."""

    __slots__ = ("conic", "base", "forms", "pivot", "comp")

    def __init__(self, conic: TernaryQuadraticForm, base: tuple[int, int, int],
                 pivot: int | None = None):
        if conic(*base) != 0:
            raise PointNotOnConic(f"{base} is not on the conic")
        if conic.rank() != 3:
            raise DegenerateConic("parametrization needs a smooth conic")
        self.conic = conic
        self.base = tuple(int(v) for v in base)
        if pivot is not None:
            if base[pivot] == 0:
                raise ValueError("pivot coordinate of the base point vanishes")
            piv = pivot
        else:
            piv = next(i for i, v in enumerate(base) if v != 0)
        i, j = [m for m in range(3) if m != piv]
        self.pivot = piv
        self.comp = (i, j)
        e_i = tuple(Fraction(int(m == i)) for m in range(3))
        e_j = tuple(Fraction(int(m == j)) for m in range(3))
        p = tuple(Fraction(v) for v in base)
        qu = conic(*e_i)
        qv = conic(*e_j)
        buv = conic.bilinear(e_i, e_j)
        bpu = conic.bilinear(p, e_i)
        bpv = conic.bilinear(p, e_j)
        forms = []
        for m in range(3):
            c_uu = p[m] * qu - 2 * bpu * (QQ1 if m == i else QQ0)
            c_uv = (2 * p[m] * buv - 2 * bpu * (QQ1 if m == j else QQ0)
                    - 2 * bpv * (QQ1 if m == i else QQ0))
            c_vv = p[m] * qv - 2 * bpv * (QQ1 if m == j else QQ0)
            forms.append([c_uu, c_uv, c_vv])
        # joint primitive integer normalization (projectively the same map)
        den = 1
        for row in forms:
            for v in row:
                den = den * v.denominator // math.gcd(den, v.denominator)
        num = 0
        for row in forms:
            for v in row:
                num = math.gcd(num, int(v * den))
        self.forms = tuple(BinaryForm(2, [v * den / num for v in row]) for row in forms)
        quartic = _compose_quadric(conic, self.forms)
        assert quartic.is_zero(), "parametrization identity failed"

    def point_at(self, a: int, b: int) -> tuple[int, int, int]:
        vec = tuple(f(Fraction(a), Fraction(b)) for f in self.forms)
        ints = tuple(int(v) for v in vec)
        return primitive_tuple(ints)

    def parameter_of(self, point) -> tuple[Fraction, Fraction]:
        """Exact inverse: the parameter mapping to the given conic point."""
        p = [Fraction(v) for v in self.base]
        i, j = self.comp
        cols = [[p[r],
                 Fraction(int(r == i)),
                 Fraction(int(r == j))] for r in range(3)]
        sol = linalg.solve(cols, [Fraction(v) for v in point], QQ1)
        if sol is None:
            raise PointNotOnConic("point is not in the plane (impossible)")
        _, alpha, beta = sol
        if alpha == 0 and beta == 0:
            # the point is the base point: the tangent-direction parameter
            e_i = tuple(Fraction(int(m == i)) for m in range(3))
            e_j = tuple(Fraction(int(m == j)) for m in range(3))
            pb = tuple(Fraction(v) for v in self.base)
            return (self.conic.bilinear(pb, e_j), -self.conic.bilinear(pb, e_i))
        return (alpha, beta)


def _compose_quadric(q: TernaryQuadraticForm, forms) -> BinaryForm:
    a, b, c, d, e, f = q.coeffs
    fx, fy, fz = forms
    out = fx.mul(fx).scale(a)
    terms = [(fy, fy, b), (fz, fz, c), (fx, fy, d), (fx, fz, e), (fy, fz, f)]
    for g, h, s in terms:
        prod = g.mul(h).scale(s)
        out = BinaryForm(4, [x + y for x, y in zip(out.coeffs, prod.coeffs)])
    return out


def parametrize(q: TernaryQuadraticForm, point, pivot: int | None = None
                ) -> ConicParametrization:
    return ConicParametrization(q, point, pivot)


# --- conic-conic intersection -------------------------------------------------


@dataclass(frozen=True)
class ZeroCyclePoint:
    field: NumberField
    coords: tuple          # NFElt coordinates, first nonzero normalized to 1
    multiplicity: int

    def degree(self) -> int:
        return self.field.degree

    def is_rational(self) -> bool:
        return self.field.is_rational_field()

    def rational_coords(self) -> tuple[int, int, int]:
        if not self.is_rational():
            raise ValueError("point is not rational")
        fracs = [c.as_rational() for c in self.coords]
        den = 1
        for v in fracs:
            den = den * v.denominator // math.gcd(den, v.denominator)
        return primitive_tuple(tuple(int(v * den) for v in fracs))


_SHEARS = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 3), (3, 1),
           (1, 3), (3, 2), (0, 2), (2, 0), (4, 1), (1, 4), (5, 2), (2, 5),
           (3, 4), (4, 3), (5, 1), (1, 5), (6, 1), (1, 6), (7, 3), (5, 3)]


def _shear(q: TernaryQuadraticForm, a: int, b: int) -> TernaryQuadraticForm:
    """Q(x + a z, y + b z, z)."""
    A, B, C, D, E, F = q.coeffs
    return TernaryQuadraticForm(
        A, B, q(a, b, 1),
        D,
        2 * a * A + b * D + E,
        2 * b * B + a * D + F,
    )


def intersect_conics(q1: TernaryQuadraticForm, q2: TernaryQuadraticForm
                     ) -> list[ZeroCyclePoint]:
    """Intersection zero-cycle of two conics without common component: a list
    of points over their minimal fields of definition, total multiplicity 4."""
    if q1.is_zero() or q2.is_zero():
        raise ZeroForm("intersection requires nonzero conics")
    c1 = q1.integer_coeffs()
    c2 = q2.integer_coeffs()
    if c1 == c2:
        raise CommonComponent("identical conics")
    for a, b in _SHEARS:
        s1 = _shear(q1, a, b)
        s2 = _shear(q2, a, b)
        if s1.coeffs[2] == 0 or s2.coeffs[2] == 0:
            continue
        res = _resultant_z(s1, s2)
        if res.is_zero():
            raise CommonComponent("resultant vanishes identically")
        points = _points_from_resultant(s1, s2, res)
        if points is None:
            continue  # some root had two z-values above it; move the center
        total = sum(p.degree() * p.multiplicity for p in points)
        assert total == 4, f"zero-cycle degree {total} != 4"
        return [_unshear(p, a, b) for p in points]
    raise ArithmeticError("no generic projection found (should not happen)")


def _resultant_z(s1: TernaryQuadraticForm, s2: TernaryQuadraticForm) -> BinaryForm:
    def rows(s):
        A, B, C, D, E, F = s.coeffs
        c2 = BinaryForm(0, [C])
        c1 = BinaryForm(1, [E, F])
        c0 = BinaryForm(2, [A, D, B])
        return c2, c1, c0

    a2, a1, a0 = rows(s1)
    b2, b1, b0 = rows(s2)
    z0 = BinaryForm(0, [QQ0])  # zero entries evaluate to 0 at any degree
    mat = [[a2, a1, a0, z0],
           [z0, a2, a1, a0],
           [b2, b1, b0, z0],
           [z0, b2, b1, b0]]
    return det_form_matrix(mat, 4)


def _points_from_resultant(s1, s2, res: BinaryForm):
    out = []
    k_t = res.t_multiplicity() if not res.is_zero() else 0
    dense = res.dense_s()
    pieces: list[tuple[NumberField, object, int]] = []
    if res.degree - pdeg(dense) > 0:
        # root [1:0] with multiplicity degree - deg(dense)
        pieces.append((QQ, None, res.degree - pdeg(dense)))
    if pdeg(dense) > 0:
        for fac, mult in factor_monic_rational([c / dense[-1] for c in dense]):
            if pdeg(fac) == 1:
                pieces.append((QQ, QQ.element(-fac[0]), mult))
            else:
                k = number_field(fac)
                pieces.append((k, k.gen(), mult))
    for k, x0, mult in pieces:
        if x0 is None:
            xy = (k.one(), k.zero())
        else:
            xy = (x0, k.one())
        g1 = _z_quadratic(s1, xy, k)
        g2 = _z_quadratic(s2, xy, k)
        h = pgcd(g1, g2)
        if pdeg(h) != 1:
            return None  # not in good position for this projection
        z0 = -h[0] / h[1]
        coords = _normalize_vec((xy[0], xy[1], z0), k)
        out.append(ZeroCyclePoint(field=k, coords=coords, multiplicity=mult))
    return out


def _z_quadratic(s: TernaryQuadraticForm, xy, k: NumberField) -> list:
    A, B, C, D, E, F = [k.element(v) for v in s.coeffs]
    x, y = xy
    c0 = A * x * x + D * x * y + B * y * y
    c1 = E * x + F * y
    c2 = C
    out = [c0, c1, c2]
    while out and out[-1].is_zero():
        out.pop()
    return out


def _unshear(p: ZeroCyclePoint, a: int, b: int) -> ZeroCyclePoint:
    x, y, z = p.coords
    k = p.field
    coords = _normalize_vec((x + a * z, y + b * z, z), k)
    return ZeroCyclePoint(field=k, coords=coords, multiplicity=p.multiplicity)
