"""Elementary integer number theory used across the package.

All routines are exact; sizes are desk-scale (factorizations come from
coefficients of small surfaces), so trial division plus Pollard rho is
plenty.
"""

from __future__ import annotations

import math
from fractions import Fraction

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    # n odd composite, not a prime power of a tiny prime
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed on {n}")


def factorint(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}.  factorint(0) raises."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < 100000:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += wheel[i % 8]
        i += 1
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m):
                out[m] = out.get(m, 0) + 1
                continue
            d = _pollard_rho(m)
            stack.append(d)
            stack.append(m // d)
    return out


def squarefree_part(n: int) -> int:
    """Largest squarefree divisor of n, with the sign of n (0 maps to 0)."""
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factorint(n).items():
        if e % 2:
            out *= p
    return out


def is_square_int(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_square_fraction(q: Fraction) -> bool:
    return q >= 0 and is_square_int(q.numerator) and is_square_int(q.denominator)


def sqrt_fraction(q: Fraction) -> Fraction:
    if not is_square_fraction(q):
        raise ValueError(f"{q} is not a rational square")
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def valuation(n: int, p: int) -> int:
    """p-adic valuation of n != 0."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation_fraction(q: Fraction, p: int) -> int:
    if q == 0:
        raise ValueError("valuation of 0 is infinite")
    return valuation(q.numerator, p) - valuation(q.denominator, p)


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of a modulo an odd prime p, or None if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod_pk(a: int, p: int, k: int) -> int | None:
    """A square root of a mod p^k for odd p, a a unit square mod p; else None."""
    r = sqrt_mod_prime(a, p)
    if r is None or r == 0:
        return None if r is None else (0 if a % p ** k == 0 else None)
    pk = p
    while pk < p ** k:
        pk = min(pk * pk, p ** k)
        # Newton step for x^2 - a
        inv = pow(2 * r, -1, pk)
        r = (r - (r * r - a) * inv) % pk
    return r % p ** k


def crt(residues: list[int], moduli: list[int]) -> int:
    """Chinese remainder for pairwise coprime moduli."""
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        g = pow(m, -1, n)
        x = x + m * ((r - x) * g % n)
        m *= n
    return x % m


def centered(a: int, n: int) -> int:
    """Representative of a mod n in (-n/2, n/2]."""
    a %= n
    if 2 * a > n:
        a -= n
    return a


def rational_reconstruct(c: int, n: int, bound: int | None = None) -> tuple[int, int] | None:
    """Find a/b == c mod n with |a|, |b| <= bound (default floor(sqrt(n/2))).

    Returns (a, b) with b > 0 and gcd(b, n) = 1, or None.
    """
    if bound is None:
        bound = math.isqrt(n // 2)
    r0, r1 = n, c % n
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    a, b = r1, t1
    if b == 0 or abs(b) > bound or math.gcd(b, n) != 1:
        return None
    if b < 0:
        a, b = -a, -b
    if (a - c * b) % n != 0:
        return None
    return a, b


def primitive_tuple(coords: tuple[int, ...]) -> tuple[int, ...]:
    """Divide by the gcd and normalize the first nonzero entry to be positive."""
    g = 0
    for c in coords:
        g = math.gcd(g, c)
    if g == 0:
        raise ValueError("zero tuple has no primitive representative")
    coords = tuple(c // g for c in coords)
    for c in coords:
        if c != 0:
            if c < 0:
                coords = tuple(-x for x in coords)
            break
    return coords
