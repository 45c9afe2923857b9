"""Hensel lifting of simple polynomial roots to prime-power precision."""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import NonsimpleRoot, NotARoot, PrecisionExhausted
from .intmath import valuation
from .padics import PadicValue
from .polys import pstrip


def _p_normalize(g: list[Fraction], p: int) -> list[int]:
    """Clear denominators and the common p-power so the coefficients are
    integers, at least one of them a p-unit.  Scaling does not move roots."""
    den = 1
    for c in g:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in g]
    v = min(valuation(c, p) for c in ints if c != 0)
    if v > 0:
        ints = [c // p ** v for c in ints]
    return ints


def _eval_mod(g: list[int], x: int, mod: int) -> int:
    out = 0
    for c in reversed(g):
        out = (out * x + c) % mod
    return out


def lift_root_mod(g: list[int], p: int, r0: int, m: int) -> int:
    """Newton-lift a simple root r0 of g mod p to the unique root mod p^m."""
    if _eval_mod(g, r0, p) != 0:
        raise NotARoot(f"g({r0}) != 0 mod {p}")
    dg = [c * i for i, c in enumerate(g)][1:]
    if _eval_mod(dg, r0, p) == 0:
        raise NonsimpleRoot(f"g'({r0}) == 0 mod {p}")
    r = r0 % p
    k = 1
    while k < m:
        k = min(2 * k, m)
        pk = p ** k
        r = (r - _eval_mod(g, r, pk) * pow(_eval_mod(dg, r, pk), -1, pk)) % pk
    return r % p ** m


def hensel_lift_root(g: list[Fraction], p: int, r0: int, m: int) -> PadicValue:
    """Lift a simple root of g modulo p to precision m.

    Requires g(r0) = 0 mod p and g'(r0) != 0 mod p (after the canonical
    p-normalization of g, which does not move roots).  Returns the unique
    r in Z_p with r = r0 mod p and g(r) = 0, known modulo p^m.
    """
    g = pstrip([Fraction(c) for c in g])
    if not g:
        raise NotARoot("zero polynomial has no simple roots")
    if m < 1:
        raise ValueError("precision must be >= 1")
    gi = _p_normalize(g, p)
    r = lift_root_mod(gi, p, r0, m)
    if r == 0:
        if g[0] == 0:
            return PadicValue.zero(p)
        raise PrecisionExhausted(
            f"root is divisible by {p}^{m}; no unit digit at this precision")
    return PadicValue.from_integer_mod(r, p, m)
