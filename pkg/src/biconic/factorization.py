"""Factorization of univariate polynomials over the rationals.

Pipeline: Yun squarefree decomposition, rational-root extraction, then
factorization modulo a good prime, Hensel lifting of the modular
factorization and Zassenhaus subset recombination.  The public entry point
supports degrees up to 12 (discriminants here have degree 6; resultants
used by square testing at most double that); internal callers may lift the
cap.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import UnsupportedDegree, ZeroPolynomial
from .gfpolys import (gf_divmod, gf_factor_squarefree, gf_gcdex, gf_is_squarefree,
                      gf_mul, gf_mod, gf_trunc)
from .intmath import is_prime
from .polys import (pdeg, pdivmod, pmonic, pmul, pstrip, to_int_primitive,
                    yun_squarefree)

DEGREE_CAP = 12


def factor_unipoly(f: list[Fraction]) -> tuple[Fraction, list[tuple[list[Fraction], int]]]:
    """Factor f over Q as content * prod(factor^mult) with monic irreducible
    factors, sorted by (degree, coefficient tuple)."""
    f = pstrip([Fraction(c) for c in f])
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if pdeg(f) > DEGREE_CAP:
        raise UnsupportedDegree(f"degree {pdeg(f)} exceeds supported bound {DEGREE_CAP}")
    return f[-1], factor_monic_rational(pmonic(f))


def factor_monic_rational(f: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Irreducible monic factors with multiplicities of a monic f over Q."""
    out: list[tuple[list[Fraction], int]] = []
    for part, mult in yun_squarefree(f):
        g_int, _ = to_int_primitive(part)
        for h in _factor_squarefree_int(g_int):
            out.append((pmonic([Fraction(c) for c in h]), mult))
    out.sort(key=lambda t: (pdeg(t[0]), t[0]))
    return out


def _int_divides(f: list[int], g: list[int]) -> list[int] | None:
    """g / f over Z if the division is exact, else None."""
    r = list(g)
    q = [0] * (len(g) - len(f) + 1)
    while len(r) >= len(f):
        if r[-1] % f[-1]:
            return None
        c = r[-1] // f[-1]
        k = len(r) - len(f)
        q[k] = c
        for i, b in enumerate(f):
            r[i + k] -= c * b
        while r and r[-1] == 0:
            r.pop()
        if not r:
            break
    return q if not r else None


_ROOT_EXTRACT_LIMIT = 10 ** 12      # beyond this, Zassenhaus finds linear factors


def _rational_roots(g: list[int]) -> tuple[list[list[int]], list[int]]:
    """Extract linear factors (b x - a) from a squarefree primitive g."""
    factors = []
    while g and g[0] == 0:
        factors.append([0, 1])
        g = g[1:]
    changed = True
    while changed and len(g) > 1:
        changed = False
        lc, c0 = abs(g[-1]), abs(g[0])
        if lc > _ROOT_EXTRACT_LIMIT or c0 > _ROOT_EXTRACT_LIMIT:
            break
        for q in _divisors(lc):
            for a in _divisors(c0):
                for p_ in (a, -a):
                    if math.gcd(p_, q) != 1:
                        continue
                    # g(p_/q) * q^deg, exactly
                    val = sum(c * p_ ** i * q ** (len(g) - 1 - i) for i, c in enumerate(g))
                    if val == 0:
                        lin = [-p_, q]
                        quo = _int_divides(lin, g)
                        assert quo is not None
                        factors.append(lin)
                        g = quo
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    return factors, g


def _divisors(n: int) -> list[int]:
    from .intmath import factorint

    out = [1]
    for p, e in factorint(n).items():
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)


def _factor_squarefree_int(g: list[int]) -> list[list[int]]:
    """Irreducible integer-primitive factors of a squarefree primitive g, lc > 0."""
    if pdeg(g) <= 0:
        return []
    if pdeg(g) == 1:
        return [g]
    linear, g = _rational_roots(g)
    out = list(linear)
    if pdeg(g) == 1:
        out.append(g)
        return out
    if pdeg(g) >= 2:
        out.extend(_zassenhaus(g))
    return out


def _monicize(g: list[int]) -> list[int]:
    """lc^(n-1) g(x / lc): monic integer polynomial with the same splitting."""
    lc = g[-1]
    n = pdeg(g)
    return [c * lc ** (n - 1 - i) for i, c in enumerate(g[:-1])] + [1]


def _demonicize(h: list[int], lc: int) -> list[int]:
    """Map a monic factor of the monicized polynomial back: primitive h(lc x)."""
    f = [c * lc ** i for i, c in enumerate(h)]
    g = math.gcd(*f) if len(f) > 1 else abs(f[0])
    f = [c // g for c in f]
    if f[-1] < 0:
        f = [-c for c in f]
    return f


def _good_primes(h: list[int], count: int = 3) -> list[tuple[int, list[list[int]]]]:
    found = []
    p = 3
    while len(found) < count and p < 2000:
        if is_prime(p) and h[-1] % p:
            hp = gf_trunc(list(h), p)
            if len(hp) == len(h) and gf_is_squarefree(hp, p):
                found.append((p, gf_factor_squarefree(gf_trunc(h, p), p)))
                if len(found[-1][1]) <= 2:
                    break
        p += 2
    if not found:
        raise ArithmeticError("no good prime found for factorization")
    return found


def _zassenhaus(g: list[int]) -> list[list[int]]:
    lc = g[-1]
    h = _monicize(g) if lc != 1 else list(g)
    n = pdeg(h)
    candidates = _good_primes(h)
    p, modular = min(candidates, key=lambda t: len(t[1]))
    if len(modular) == 1:
        return [g]
    # Mignotte-style bound on factor coefficients, then lifting precision
    norm = math.isqrt(sum(c * c for c in h)) + 1
    bound = 2 ** n * norm
    ell = 1
    while p ** ell < 2 * bound + 1:
        ell += 1
    lifted = _hensel_lift_list(h, modular, p, ell)
    pl = p ** ell

    out: list[list[int]] = []
    indices = list(range(len(lifted)))
    rest = list(h)
    s = 1
    while 2 * s <= len(indices):
        found = False
        for subset in itertools.combinations(indices, s):
            cand = [1]
            for i in subset:
                cand = [c % pl for c in _int_mul(cand, lifted[i])]
            cand = [_centered(c, pl) for c in cand]
            quo = _int_divides(cand, rest)
            if quo is not None:
                out.append(cand)
                rest = quo
                indices = [i for i in indices if i not in subset]
                found = True
                break
        if not found:
            s += 1
    if pdeg(rest) > 0:
        out.append(rest)
    if lc != 1:
        out = [_demonicize(f, lc) for f in out]
    return out


def _int_mul(f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def _centered(a: int, n: int) -> int:
    a %= n
    return a - n if 2 * a > n else a


def _hensel_step(h: list[int], f: list[int], g: list[int], p: int, k: int) -> tuple[list[int], list[int]]:
    """One linear lift: h = f g mod p^k, f and g monic coprime mod p; returns
    (f', g') with h = f' g' mod p^(k+1) and f' = f, g' = g mod p^k."""
    pk = p ** k
    prod = _int_mul(f, g)
    e = [((hc - pc) // pk) % p for hc, pc in
         itertools.zip_longest(h, prod, fillvalue=0)]
    e = gf_trunc(e, p)
    s, t, _ = gf_gcdex(gf_trunc(f, p), gf_trunc(g, p), p)
    u = gf_mod(gf_mul(t, e, p), gf_trunc(f, p), p)
    num = gf_trunc([a - b for a, b in
                    itertools.zip_longest(e, gf_mul(u, gf_trunc(g, p), p), fillvalue=0)], p)
    v, rem = gf_divmod(num, gf_trunc(f, p), p)
    assert not rem
    f2 = [c + pk * (u[i] if i < len(u) else 0) for i, c in enumerate(f)]
    g2 = [c + pk * (v[i] if i < len(v) else 0) for i, c in enumerate(g)]
    return f2, g2


def _hensel_pair(h: list[int], f0: list[int], g0: list[int], p: int, ell: int) -> tuple[list[int], list[int]]:
    f = [c % p for c in f0]
    g = [c % p for c in g0]
    for k in range(1, ell):
        f, g = _hensel_step(h, f, g, p, k)
    pl = p ** ell
    return [c % pl for c in f], [c % pl for c in g]


def _hensel_lift_list(h: list[int], factors: list[list[int]], p: int, ell: int) -> list[list[int]]:
    """Lift h = prod factors (monic, mod p) to mod p^ell."""
    if len(factors) == 1:
        pl = p ** ell
        return [[c % pl for c in h]]
    half = len(factors) // 2
    left = [1]
    for fac in factors[:half]:
        left = gf_trunc(_int_mul(left, fac), p)
    right = [1]
    for fac in factors[half:]:
        right = gf_trunc(_int_mul(right, fac), p)
    lft, rgt = _hensel_pair(h, left, right, p, ell)
    return (_hensel_lift_list(lft, factors[:half], p, ell)
            + _hensel_lift_list(rgt, factors[half:], p, ell))
