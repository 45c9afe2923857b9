"""Polynomial arithmetic and factorization over prime fields GF(p).

Polynomials are lists of ints in [0, p) with ascending powers and no
trailing zeros.  Factorization is squarefree + distinct-degree +
Cantor-Zassenhaus equal-degree splitting; the random stream is seeded from
the input so results are deterministic.
"""

from __future__ import annotations

import hashlib
import random


def gf_strip(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def gf_trunc(f: list[int], p: int) -> list[int]:
    return gf_strip([c % p for c in f])


def gf_deg(f: list[int]) -> int:
    return len(f) - 1


def gf_add(f, g, p):
    n = max(len(f), len(g))
    return gf_strip([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p
                     for i in range(n)])


def gf_sub(f, g, p):
    n = max(len(f), len(g))
    return gf_strip([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p
                     for i in range(n)])


def gf_scale(f, c, p):
    c %= p
    if c == 0:
        return []
    return [a * c % p for a in f]


def gf_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return gf_strip(out)


def gf_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError
    r = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    inv = pow(g[-1], -1, p)
    while len(r) >= len(g):
        c = r[-1] * inv % p
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[i + k] = (r[i + k] - c * b) % p
        gf_strip(r)
    return gf_strip(q), r


def gf_mod(f, g, p):
    return gf_divmod(f, g, p)[1]


def gf_monic(f, p):
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def gf_gcd(f, g, p):
    a, b = list(f), list(g)
    while b:
        a, b = b, gf_mod(a, b, p)
    return gf_monic(a, p)


def gf_gcdex(f, g, p):
    """(s, t, h) with s f + t g = h = monic gcd."""
    a, b = list(f), list(g)
    sa, sb = [1], []
    ta, tb = [], [1]
    while b:
        q, r = gf_divmod(a, b, p)
        a, b = b, r
        sa, sb = sb, gf_sub(sa, gf_mul(q, sb, p), p)
        ta, tb = tb, gf_sub(ta, gf_mul(q, tb, p), p)
    if not a:
        return [], [], []
    inv = pow(a[-1], -1, p)
    return gf_scale(sa, inv, p), gf_scale(ta, inv, p), gf_monic(a, p)


def gf_pow_mod(f, n: int, g, p):
    out = [1]
    base = gf_mod(f, g, p)
    while n:
        if n & 1:
            out = gf_mod(gf_mul(out, base, p), g, p)
        base = gf_mod(gf_mul(base, base, p), g, p)
        n >>= 1
    return out


def gf_eval(f, x, p):
    out = 0
    for c in reversed(f):
        out = (out * x + c) % p
    return out


def gf_deriv(f, p):
    return gf_strip([f[i] * i % p for i in range(1, len(f))])


def gf_is_squarefree(f, p) -> bool:
    return gf_deg(gf_gcd(f, gf_deriv(f, p), p)) == 0


def _gf_ddf(f, p):
    """Distinct-degree factorization of a squarefree monic f: [(product, d)]."""
    out = []
    h = [0, 1]  # x
    g = list(f)
    d = 0
    while gf_deg(g) >= 2 * (d + 1):
        d += 1
        h = gf_pow_mod(h, p, g, p)
        common = gf_gcd(gf_sub(h, [0, 1], p), g, p)
        if gf_deg(common) > 0:
            out.append((common, d))
            g, _ = gf_divmod(g, common, p)
            h = gf_mod(h, g, p)
    if gf_deg(g) > 0:
        out.append((g, gf_deg(g)))
    return out


def _gf_edf(f, d: int, p: int, rng: random.Random):
    """Equal-degree splitting (odd p): f squarefree monic, all factors degree d."""
    n = gf_deg(f)
    if n == d:
        return [f]
    out = []
    stack = [f]
    exp = (p ** d - 1) // 2
    while stack:
        g = stack.pop()
        if gf_deg(g) == d:
            out.append(g)
            continue
        while True:
            r = [rng.randrange(p) for _ in range(gf_deg(g))] + [1]
            h = gf_sub(gf_pow_mod(r, exp, g, p), [1], p)
            w = gf_gcd(h, g, p)
            if 0 < gf_deg(w) < gf_deg(g):
                stack.append(w)
                stack.append(gf_divmod(g, w, p)[0])
                break
    return out


def _seed_from(f: list[int], p: int) -> int:
    digest = hashlib.sha256(repr((p, tuple(f))).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def gf_factor_squarefree(f, p):
    """Monic irreducible factors of a squarefree monic f over GF(p), p odd."""
    rng = random.Random(_seed_from(f, p))
    out = []
    for part, d in _gf_ddf(f, p):
        out.extend(_gf_edf(part, d, p, rng))
    out.sort(key=lambda g: (gf_deg(g), list(reversed(g))))
    return out


def gf_factor(f, p):
    """(leading coefficient, [(monic irreducible, multiplicity)]) over GF(p)."""
    f = gf_trunc(list(f), p)
    if not f:
        raise ZeroDivisionError("cannot factor the zero polynomial")
    lc = f[-1]
    f = gf_monic(f, p)
    out: list[tuple[list[int], int]] = []
    mult = 1
    while gf_deg(f) > 0:
        sqf = gf_gcd(f, gf_deriv(f, p), p)
        part, _ = gf_divmod(f, sqf, p)
        if gf_deg(part) > 0:
            for g in gf_factor_squarefree(part, p):
                e = 0
                while True:
                    q, r = gf_divmod(f, g, p)
                    if r:
                        break
                    f = q
                    e += 1
                out.append((g, e * mult))
        else:
            # f is a p-th power: f(x) = h(x^p) = h(x)^p
            h = [f[i] for i in range(0, len(f), p)]
            f = h
            mult *= p
    out.sort(key=lambda t: (gf_deg(t[0]), list(reversed(t[0]))))
    return lc, out


def gf_roots(f, p) -> list[int]:
    """Roots in GF(p) (without multiplicity), ascending."""
    f = gf_trunc(list(f), p)
    if not f:
        raise ZeroDivisionError("zero polynomial")
    if p <= 256:
        return [x for x in range(p) if gf_eval(f, x, p) == 0]
    xq = gf_pow_mod([0, 1], p, f, p)
    lin = gf_gcd(gf_sub(xq, [0, 1], p), f, p)
    out = []
    for g in gf_factor_squarefree(lin, p) if gf_deg(lin) > 0 else []:
        if gf_deg(g) == 1:
            out.append((-g[0]) % p)
    return sorted(out)
