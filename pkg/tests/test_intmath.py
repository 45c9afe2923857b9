import math
import random

from biconic.intmath import (centered, crt, factorint, is_prime, is_square_fraction,
                             primitive_tuple, rational_reconstruct, sqrt_mod_pk,
                             sqrt_mod_prime, squarefree_part, valuation)
from fractions import Fraction


def test_is_prime_small():
    primes = [2, 3, 5, 7, 11, 13, 37, 41, 43, 97, 101, 7919]
    for p in primes:
        assert is_prime(p)
    for n in [0, 1, 4, 9, 15, 91, 7917, 41 * 43]:
        assert not is_prime(n)


def test_factorint_roundtrip():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(2, 10 ** 9)
        f = factorint(n)
        prod = 1
        for p, e in f.items():
            assert is_prime(p)
            prod *= p ** e
        assert prod == n


def test_squarefree_part():
    assert squarefree_part(8) == 2
    assert squarefree_part(-8) == -2
    assert squarefree_part(36) == 1
    assert squarefree_part(-1) == -1
    assert squarefree_part(12) == 3


def test_sqrt_mod():
    rng = random.Random(2)
    for p in [3, 5, 7, 11, 13, 101]:
        for _ in range(20):
            a = rng.randrange(1, p)
            r = sqrt_mod_prime(a, p)
            if r is None:
                assert pow(a, (p - 1) // 2, p) == p - 1
            else:
                assert r * r % p == a
    for p in (3, 7, 11):
        for k in (2, 3, 4):
            a = rng.randrange(1, p)
            a = a * a % p ** k
            if a % p == 0:
                continue
            r = sqrt_mod_pk(a, p, k)
            assert r is not None and r * r % p ** k == a % p ** k


def test_crt_and_centered():
    assert crt([1, 2], [3, 5]) % 3 == 1
    assert crt([1, 2], [3, 5]) % 5 == 2
    assert centered(7, 10) == -3
    assert centered(5, 10) == 5


def test_rational_reconstruct():
    p, m = 11, 3
    n = p ** m
    for a, b in [(3, 7), (-5, 2), (1, 1), (12, 5)]:
        if math.gcd(b, p) != 1 or max(abs(a), abs(b)) > math.isqrt(n // 2):
            continue
        c = a * pow(b, -1, n) % n
        rec = rational_reconstruct(c, n)
        assert rec is not None
        ra, rb = rec
        assert Fraction(ra, rb) == Fraction(a, b)


def test_primitive_tuple():
    assert primitive_tuple((2, 4, 6)) == (1, 2, 3)
    assert primitive_tuple((-2, 4)) == (1, -2)
    assert primitive_tuple((0, -3, 6)) == (0, 1, -2)


def test_valuation_and_squares():
    assert valuation(24, 2) == 3
    assert is_square_fraction(Fraction(4, 9))
    assert not is_square_fraction(Fraction(-4, 9))
    assert not is_square_fraction(Fraction(2))
