"""Number fields Q[x]/(f) with residue-polynomial elements.

The defining polynomial is certified irreducible at construction.  Square
testing and in-field root finding go through norm resultants and rational
factorization (Trager's method); no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedDegree, ZeroPolynomial
from .factorization import factor_monic_rational
from .intmath import is_square_fraction, squarefree_part
from .polys import (interpolate, pdeg, pdivmod, pgcd, pmod, pmonic, pmul,
                    presultant, pstrip, QQ0, QQ1)

DEGREE_CAP = 12

_FIELD_CACHE: dict[tuple, "NumberField"] = {}


class NumberField:
    """Q[theta]/(f) for a monic irreducible f over Q (degree 1 means Q itself)."""

    def __init__(self, modulus: list[Fraction]):
        modulus = pstrip([Fraction(c) for c in modulus])
        if pdeg(modulus) < 1:
            raise ZeroPolynomial("defining polynomial must have degree >= 1")
        if pdeg(modulus) > DEGREE_CAP:
            raise UnsupportedDegree(
                f"field degree {pdeg(modulus)} exceeds supported bound {DEGREE_CAP}")
        modulus = pmonic(modulus)
        if pdeg(modulus) > 1:
            factors = factor_monic_rational(modulus)
            if len(factors) != 1 or factors[0][1] != 1:
                raise ValueError("defining polynomial is not irreducible")
        self.modulus = tuple(modulus)
        self.degree = pdeg(modulus)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        if self.degree == 1:
            return "NumberField(Q)"
        return f"NumberField(modulus={list(self.modulus)})"

    # --- element construction --------------------------------------------

    def element(self, coeffs) -> "NFElt":
        if isinstance(coeffs, NFElt):
            if coeffs.field != self:
                raise ValueError("element of a different field")
            return coeffs
        if isinstance(coeffs, (int, Fraction)):
            coeffs = [Fraction(coeffs)]
        coeffs = [Fraction(c) for c in coeffs]
        coeffs = pmod(coeffs, list(self.modulus))
        coeffs = coeffs + [QQ0] * (self.degree - len(coeffs))
        return NFElt(self, tuple(coeffs))

    def zero(self) -> "NFElt":
        return self.element(0)

    def one(self) -> "NFElt":
        return self.element(1)

    def gen(self) -> "NFElt":
        """The residue class theta of x (for degree 1 this is the root of f)."""
        if self.degree == 1:
            return self.element(-self.modulus[0])
        return self.element([QQ0, QQ1])

    def is_rational_field(self) -> bool:
        return self.degree == 1


def number_field(modulus) -> NumberField:
    """Cached constructor; fields with the same defining polynomial are shared."""
    key = tuple(Fraction(c) for c in modulus)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = NumberField(list(key))
    return _FIELD_CACHE[key]


QQ = number_field([QQ0, QQ1])  # Q itself, as Q[x]/(x)


class NFElt:
    """Element of a NumberField, stored as a residue polynomial in theta."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    # --- coercion ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, NFElt):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return None

    # --- ring operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElt(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NFElt(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElt(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = pmod(pmul(list(self.coeffs), list(o.coeffs)), list(self.field.modulus))
        prod = prod + [QQ0] * (self.field.degree - len(prod))
        return NFElt(self.field, tuple(prod))

    __rmul__ = __mul__

    def inverse(self) -> "NFElt":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # extended Euclid in Q[x] against the modulus
        a, b = list(self.field.modulus), pstrip(list(self.coeffs))
        ta, tb = [], [QQ1]
        while b:
            q, r = pdivmod(a, b)
            a, b = b, r
            ta, tb = tb, _psub(ta, pmul(q, tb))
        lc = a[-1]
        inv = [c / lc for c in ta]
        return self.field.element(inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # --- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.element(other)
        if not isinstance(other, NFElt) or other.field != self.field:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.modulus, self.coeffs))

    def __repr__(self):
        return f"NFElt({list(self.coeffs)})"

    def as_rational(self) -> Fraction:
        if any(c != 0 for c in self.coeffs[1:]):
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])


def _psub(f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else QQ0
        b = g[i] if i < len(g) else QQ0
        out.append(a - b)
    return pstrip(out)


# --- norms, characteristic polynomials, square testing ----------------------


def charpoly(a: NFElt) -> list[Fraction]:
    """Characteristic polynomial of a over Q: Res_theta(f(theta), X - a(theta))."""
    k = a.field
    d = k.degree
    pts = []
    for j in range(d + 1):
        x = Fraction(j)
        # Res_theta(f, x - a(theta)) evaluated exactly
        g = _psub([x], list(a.coeffs))
        if not g:
            pts.append((x, QQ0))
            continue
        pts.append((x, presultant(list(k.modulus), g)))
    return interpolate(pts)


def minpoly(a: NFElt) -> list[Fraction]:
    cp = charpoly(a)
    der = pstrip([cp[i] * i for i in range(1, len(cp))])
    g = pgcd(cp, der)
    mp, rem = pdivmod(cp, g)
    assert not rem
    return pmonic(mp)


def norm(a: NFElt) -> Fraction:
    cp = charpoly(a)
    d = a.field.degree
    return cp[0] * (-1) ** d


def _norm_of_shifted(g: list[Fraction], k: NumberField, lam: int) -> list[Fraction]:
    """N(X) = Res_theta(f(theta), g(X - lam*theta)) by evaluation-interpolation."""
    d = k.degree
    n = d * pdeg(g)
    pts = []
    f = list(k.modulus)
    for j in range(n + 1):
        x = Fraction(j)
        # g(x - lam*theta) as a polynomial in theta
        gt: list[Fraction] = []
        shift = [x, Fraction(-lam)]  # x - lam*theta
        power = [QQ1]
        for c in g:
            gt = _padd_q(gt, [c * pc for pc in power])
            power = pmul(power, shift)
        gt = pstrip(gt)
        if not gt:
            raise ZeroPolynomial("shifted polynomial vanished")
        pts.append((x, presultant(f, gt)))
    return interpolate(pts)


def _padd_q(f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else QQ0
        b = g[i] if i < len(g) else QQ0
        out.append(a + b)
    return pstrip(out)


def is_square_in_numberfield(k: NumberField, a) -> bool:
    """True iff a is a square in k.  Degree 1 falls back to exact rational
    testing; otherwise factor the norm resultant of X^2 - a and look for a
    factor of degree [k:Q] (the norm of a linear factor)."""
    a = k.element(a)
    if a.is_zero():
        return True
    if k.is_rational_field():
        return is_square_fraction(a.as_rational())
    d = k.degree
    for lam in range(0, 40):
        # norm of (X - lam*theta)^2 - a(theta)
        try:
            norm_poly = _norm_squared_shift(k, a, lam)
        except ZeroPolynomial:
            continue
        der = pstrip([norm_poly[i] * i for i in range(1, len(norm_poly))])
        if pdeg(pgcd(norm_poly, der)) == 0:
            factors = factor_monic_rational(pmonic(norm_poly))
            return any(pdeg(f) == d for f, _ in factors)
    raise ArithmeticError("no squarefree norm found")


def _norm_squared_shift(k: NumberField, a: NFElt, lam: int) -> list[Fraction]:
    """Res_theta(f, (X - lam*theta)^2 - a(theta)), degree 2*[k:Q] in X."""
    d = k.degree
    n = 2 * d
    f = list(k.modulus)
    pts = []
    for j in range(n + 1):
        x = Fraction(j)
        # (x - lam*theta)^2 - a(theta) as a polynomial in theta
        sq = pmul([x, Fraction(-lam)], [x, Fraction(-lam)])
        gt = _psub(sq, list(a.coeffs))
        gt = pstrip(gt)
        if not gt:
            # x - lam*theta squares to a: pick a different sample point
            raise ZeroPolynomial("degenerate sample")
        pts.append((x, presultant(f, gt)))
    return interpolate(pts)


def roots_in_field(g: list[Fraction], k: NumberField) -> list[NFElt]:
    """All roots in k of a nonzero squarefree-or-not polynomial g over Q."""
    g = pstrip([Fraction(c) for c in g])
    if not g:
        raise ZeroPolynomial("zero polynomial")
    if pdeg(g) == 0:
        return []
    g = pmonic(g)
    # work with the squarefree part; roots are the same
    der = pstrip([g[i] * i for i in range(1, len(g))])
    if der:
        g, _ = pdivmod(g, pgcd(g, der))
    if k.is_rational_field():
        out = []
        for fac, _ in factor_monic_rational(g):
            if pdeg(fac) == 1:
                out.append(k.element(-fac[0]))
        return out
    d = k.degree
    theta = k.gen()
    for lam in range(0, 40):
        try:
            norm_poly = _norm_of_shifted(g, k, lam)
        except ZeroPolynomial:
            continue
        der = pstrip([norm_poly[i] * i for i in range(1, len(norm_poly))])
        if pdeg(pgcd(norm_poly, der)) != 0:
            continue
        roots = []
        gk = [k.element(c) for c in g]
        for fac, _ in factor_monic_rational(pmonic(norm_poly)):
            if pdeg(fac) != d:
                continue
            # candidate linear factor: gcd_k(g(X), fac(X + lam*theta))
            shifted = _compose_linear_nf(fac, theta, lam)
            h = pgcd(gk, shifted)
            if pdeg(h) == 1:
                roots.append(-h[0] / h[1])
        return roots
    raise ArithmeticError("no squarefree norm found")


def _compose_linear_nf(fac: list[Fraction], theta: NFElt, lam: int) -> list:
    """fac(X + lam*theta) as a polynomial with coefficients in theta's field."""
    k = theta.field
    out: list = []
    shift = [lam * theta, k.one()]  # lam*theta + X
    power: list = [k.one()]
    for c in fac:
        term = [k.element(c) * pc for pc in power]
        out = _padd_generic(out, term, k.zero())
        power = pmul(power, shift)
    while out and out[-1].is_zero():
        out.pop()
    return out


def _padd_generic(f, g, zero):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else zero
        b = g[i] if i < len(g) else zero
        out.append(a + b)
    return out


def splitting_field_label(disc: Fraction) -> str:
    """Human-readable label Q(sqrt(d)) for the square class of disc over Q."""
    core = squarefree_part(disc.numerator * disc.denominator)
    if core == 1:
        return "Q"
    return f"Q(sqrt({core}))"
