"""Dense univariate polynomials and homogeneous binary forms.

Polynomials are plain lists ``[c0, c1, ...]`` (ascending powers, no trailing
zeros, ``[]`` is the zero polynomial).  Coefficients are ``Fraction`` for
polynomials over the rationals, but every routine that only uses ring/field
operations also works verbatim with number-field elements.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ZeroPolynomial
from . import linalg

QQ0 = Fraction(0)
QQ1 = Fraction(1)


def pstrip(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def pdeg(f: list) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(f) - 1


def pconst(c) -> list:
    return [] if c == 0 else [c]


def padd(f: list, g: list) -> list:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else QQ0
        b = g[i] if i < len(g) else QQ0
        out.append(a + b)
    return pstrip(out)


def pneg(f: list) -> list:
    return [-c for c in f]


def psub(f: list, g: list) -> list:
    return padd(f, pneg(g))


def pscale(f: list, c) -> list:
    if c == 0:
        return []
    return [a * c for a in f]


def pmul(f: list, g: list) -> list:
    if not f or not g:
        return []
    out = [QQ0 * f[0]] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return pstrip(out)


def ppow(f: list, n: int) -> list:
    out = [QQ1]
    base = list(f)
    while n:
        if n & 1:
            out = pmul(out, base)
        base = pmul(base, base)
        n >>= 1
    return out


def pdivmod(f: list, g: list) -> tuple[list, list]:
    """Euclidean division over a field."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [QQ0 * g[0]] * max(0, len(f) - len(g) + 1)
    lc = g[-1]
    while len(r) >= len(g):
        c = r[-1] / lc
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[i + k] = r[i + k] - c * b
        pstrip(r)
    return pstrip(q), pstrip(r)


def pmod(f: list, g: list) -> list:
    return pdivmod(f, g)[1]


def pmonic(f: list) -> list:
    if not f:
        return []
    lc = f[-1]
    return [c / lc for c in f]


def pgcd(f: list, g: list) -> list:
    """Monic gcd over a field."""
    a, b = list(f), list(g)
    while b:
        a, b = b, pmod(a, b)
    return pmonic(a)


def pderiv(f: list) -> list:
    return pstrip([f[i] * i for i in range(1, len(f))])


def peval(f: list, x):
    out = QQ0 if not f else f[0] * 0
    for c in reversed(f):
        out = out * x + c
    return out


def pcompose(f: list, g: list) -> list:
    """f(g(x))."""
    out: list = []
    for c in reversed(f):
        out = padd(pmul(out, g), pconst(c))
    return out


def pshift(f: list, k: int) -> list:
    """Multiply by x^k."""
    if not f:
        return []
    return [QQ0 * f[0]] * k + list(f)


def content_int(f: list[Fraction]) -> Fraction:
    """c > 0 with f/c integer-primitive; sign carried by the polynomial."""
    if not f:
        raise ZeroPolynomial("zero polynomial has no content")
    den = 1
    for c in f:
        den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for c in f:
        num = math.gcd(num, c.numerator * (den // c.denominator))
    return Fraction(num, den)


def to_int_primitive(f: list[Fraction]) -> tuple[list[int], Fraction]:
    """Return (integer primitive polynomial with positive leading coeff, scale)
    so that f = scale * primitive."""
    c = content_int(f)
    g = [int(x / c) for x in f]
    if g[-1] < 0:
        g = [-x for x in g]
        c = -c
    return g, c


def presultant(f: list, g: list):
    """Resultant of two nonzero univariate polynomials over a field."""
    if not f or not g:
        raise ZeroPolynomial("resultant needs nonzero polynomials")
    m, n = pdeg(f), pdeg(g)
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    zero = f[-1] * 0
    syl = sylvester(list(f), m, list(g), n, zero)
    return linalg.det(syl)


def sylvester(f: list, m: int, g: list, n: int, zero) -> list[list]:
    """Sylvester matrix for f, g *with declared degrees* m, n (leading zeros
    allowed); rows use descending coefficients."""
    fd = [f[i] if i < len(f) else zero for i in range(m + 1)][::-1]
    gd = [g[i] if i < len(g) else zero for i in range(n + 1)][::-1]
    size = m + n
    mat = [[zero] * size for _ in range(size)]
    for r in range(n):
        for j, c in enumerate(fd):
            mat[r][r + j] = c
    for r in range(m):
        for j, c in enumerate(gd):
            mat[n + r][r + j] = c
    return mat


def yun_squarefree(f: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Yun's squarefree decomposition: f = lc * prod a_i^i with a_i squarefree
    monic and pairwise coprime.  Returns [(a_i, i)] skipping trivial a_i = 1."""
    f = pmonic(f)
    out = []
    df = pderiv(f)
    a = pgcd(f, df)
    b, _ = pdivmod(f, a)
    c, _ = pdivmod(df, a)
    i = 1
    while pdeg(b) > 0:
        d = psub(c, pderiv(b))
        g = pgcd(b, d)
        if pdeg(g) > 0:
            out.append((g, i))
        b, _ = pdivmod(b, g)
        c, _ = pdivmod(d, g)
        i += 1
    return out


def interpolate(points: list[tuple]) -> list:
    """Lagrange interpolation; points are (x, y) with field values."""
    n = len(points)
    if n == 0:
        return []
    result: list = []
    for i, (xi, yi) in enumerate(points):
        basis = [yi / yi if yi != 0 else yi * 0 + 1]  # one
        denom = None
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = pmul(basis, [-xj, basis[0] * 0 + 1])
            d = xi - xj
            denom = d if denom is None else denom * d
        if denom is None:
            denom = 1
        result = padd(result, pscale(basis, yi / denom))
    return result


class BinaryForm:
    """Homogeneous form of declared degree d in (s, t).

    ``coeffs[i]`` multiplies ``s^(d-i) t^i``; leading coefficients may vanish
    (a root at [1:0]) but the coefficient list always has length d + 1.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != degree + 1:
            raise ValueError(f"degree-{degree} form needs {degree + 1} coefficients")
        self.degree = degree
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_dense_s(cls, degree: int, dense: list[Fraction]) -> "BinaryForm":
        """Homogenize a polynomial in s (ascending coefficients) to degree d."""
        if len(dense) > degree + 1:
            raise ValueError("dense polynomial exceeds declared degree")
        coeffs = [QQ0] * (degree + 1)
        for j, c in enumerate(dense):
            coeffs[degree - j] = Fraction(c)
        return cls(degree, coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, BinaryForm) and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        return f"BinaryForm({self.degree}, {list(self.coeffs)})"

    def __call__(self, s, t):
        d = self.degree
        return sum((c * s ** (d - i) * t ** i for i, c in enumerate(self.coeffs)),
                   start=Fraction(0))

    def dense_s(self) -> list[Fraction]:
        """Coefficients of F(s, 1) ascending in s."""
        return pstrip(list(reversed(self.coeffs)))

    def t_multiplicity(self) -> int:
        """Multiplicity of the root [1:0], i.e. the power of t dividing F."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise ZeroPolynomial("zero form")

    def scale(self, c) -> "BinaryForm":
        return BinaryForm(self.degree, [Fraction(c) * a for a in self.coeffs])

    def mul(self, other: "BinaryForm") -> "BinaryForm":
        d = self.degree + other.degree
        out = [QQ0] * (d + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return BinaryForm(d, out)

    def deriv_s(self) -> "BinaryForm":
        d = self.degree
        return BinaryForm(d - 1, [self.coeffs[i] * (d - i) for i in range(d)])

    def deriv_t(self) -> "BinaryForm":
        d = self.degree
        return BinaryForm(d - 1, [self.coeffs[i + 1] * (i + 1) for i in range(d)])


def binary_resultant(F: BinaryForm, G: BinaryForm) -> Fraction:
    """Resultant of two binary forms at their declared degrees; zero iff they
    share a projective root over the algebraic closure."""
    if F.is_zero() or G.is_zero():
        raise ZeroPolynomial("resultant of a zero form")
    fd = list(reversed(F.coeffs))  # ascending in s, padded to declared degree
    gd = list(reversed(G.coeffs))
    syl = sylvester(fd, F.degree, gd, G.degree, QQ0)
    return linalg.det(syl)


def binary_gcd(F: BinaryForm, G: BinaryForm) -> BinaryForm:
    """Monic-in-s gcd of two nonzero binary forms, including t-power factors."""
    if F.is_zero() or G.is_zero():
        raise ZeroPolynomial("gcd of a zero form")
    k = min(F.t_multiplicity(), G.t_multiplicity())
    g = pgcd(F.dense_s(), G.dense_s())
    d = pdeg(g) + k
    return BinaryForm.from_dense_s(d, g).mul(_t_power(k)) if k else BinaryForm.from_dense_s(d, g)


def _t_power(k: int) -> BinaryForm:
    return BinaryForm(k, [QQ0] * k + [QQ1])


def wronskian(A: BinaryForm, B: BinaryForm) -> BinaryForm:
    """Jacobian determinant A_s B_t - A_t B_s (degree 2d - 2 for degree-d maps)."""
    return _bf_sub(A.deriv_s().mul(B.deriv_t()), A.deriv_t().mul(B.deriv_s()))


def _bf_sub(F: BinaryForm, G: BinaryForm) -> BinaryForm:
    if F.degree != G.degree:
        raise ValueError("degree mismatch")
    return BinaryForm(F.degree, [a - b for a, b in zip(F.coeffs, G.coeffs)])


def det_form_matrix(mat: list[list[BinaryForm]], total_degree: int) -> BinaryForm:
    """Determinant of a square matrix of binary forms, assuming each summand of
    the expansion is homogeneous of the given total degree.  Computed by
    evaluating at total_degree + 1 points (s, 1) and interpolating."""
    pts = []
    for k in range(total_degree + 1):
        x = Fraction(k)
        m = [[e(x, QQ1) for e in row] for row in mat]
        pts.append((x, linalg.det(m)))
    dense = interpolate(pts)
    return BinaryForm.from_dense_s(total_degree, dense)
