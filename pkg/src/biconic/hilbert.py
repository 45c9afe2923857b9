"""Hilbert symbols over the rationals.

``hilbert_symbol(a, b, place)`` is +1 iff z^2 = a x^2 + b y^2 has a
nontrivial solution over the completion at the place (a prime, or the real
place REAL).  Formulas follow the classical unit/valuation decomposition.
"""

from __future__ import annotations

from fractions import Fraction

from .intmath import factorint, valuation

REAL = "real"


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ValueError("legendre symbol of 0")
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol (a, b) at a finite prime or the real place."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol requires nonzero arguments")
    # only the square class matters: clear denominators
    ai = a.numerator * a.denominator
    bi = b.numerator * b.denominator
    if place == REAL:
        return -1 if (ai < 0 and bi < 0) else 1
    p = place
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"not a place: {place!r}")
    alpha = valuation(ai, p)
    beta = valuation(bi, p)
    u = ai // p ** alpha
    v = bi // p ** beta
    if p == 2:
        eps_u, eps_v = (u - 1) // 2, (v - 1) // 2
        om_u, om_v = (u * u - 1) // 8, (v * v - 1) // 8
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    e = alpha * beta * ((p - 1) // 2)
    sign = -1 if e % 2 else 1
    if beta % 2:
        sign *= _legendre(u, p)
    if alpha % 2:
        sign *= _legendre(v, p)
    return sign


def relevant_places(a, b) -> list:
    """Real place, 2, and odd primes dividing the numerator or denominator of
    a or b: outside this set the symbol is +1."""
    a, b = Fraction(a), Fraction(b)
    ps = {2}
    for x in (a.numerator, a.denominator, b.numerator, b.denominator):
        if x not in (0, 1, -1):
            ps.update(factorint(x))
    return [REAL] + sorted(ps)


def hilbert_product_check(a, b) -> bool:
    """Product formula: the symbols over all relevant places multiply to +1."""
    prod = 1
    for place in relevant_places(a, b):
        prod *= hilbert_symbol(a, b, place)
    return prod == 1
