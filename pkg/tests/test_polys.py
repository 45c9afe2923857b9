import random
from fractions import Fraction as F

from biconic.polys import (BinaryForm, binary_gcd, binary_resultant, det_form_matrix,
                           interpolate, pdeg, pdivmod, pgcd, pmul, presultant,
                           pstrip, wronskian, yun_squarefree)


def rand_poly(rng, deg, lo=-9, hi=9):
    f = [F(rng.randint(lo, hi)) for _ in range(deg + 1)]
    f[-1] = F(rng.choice([v for v in range(lo, hi + 1) if v != 0]))
    return f


def test_divmod_roundtrip():
    rng = random.Random(3)
    for _ in range(100):
        f = rand_poly(rng, rng.randint(0, 6))
        g = rand_poly(rng, rng.randint(0, 4))
        q, r = pdivmod(f, g)
        assert pstrip(list(f)) == pstrip([a + b for a, b in _padded(pmul(q, g), r)])
        assert pdeg(r) < pdeg(g) or not r


def _padded(a, b):
    n = max(len(a), len(b))
    a = list(a) + [F(0)] * (n - len(a))
    b = list(b) + [F(0)] * (n - len(b))
    return zip(a, b)


def test_gcd():
    f = pmul([F(-1), F(1)], [F(2), F(1)])     # (x-1)(x+2)
    g = pmul([F(-1), F(1)], [F(5), F(1)])     # (x-1)(x+5)
    assert pgcd(f, g) == [F(-1), F(1)]


def test_yun():
    # (x-1)^3 (x+2)^2 x
    f = pmul(pmul([F(0), F(1)], pmul(pmul([F(-1), F(1)], [F(-1), F(1)]), [F(-1), F(1)])),
             pmul([F(2), F(1)], [F(2), F(1)]))
    parts = dict((tuple(a), m) for a, m in yun_squarefree(f))
    assert parts[(F(0), F(1))] == 1
    assert parts[(F(-1), F(1))] == 3
    assert parts[(F(2), F(1))] == 2


def test_resultants():
    # disjoint roots
    assert presultant([F(0), F(1)], [F(1)]) == 1
    # shared root
    f = [F(-1), F(1)]
    assert presultant(pmul(f, [F(3), F(1)]), pmul(f, [F(5), F(1)])) == 0


def test_binary_resultant_examples():
    Fm = BinaryForm(2, [1, 0, -2])   # s^2 - 2 t^2
    Gm = BinaryForm(2, [1, 0, 1])    # s^2 + t^2
    assert binary_resultant(Fm, Gm) == 9
    s = BinaryForm(1, [1, 0])
    t = BinaryForm(1, [0, 1])
    assert binary_resultant(s, t) in (1, -1)
    st = BinaryForm(1, [1, -1])
    assert binary_resultant(st, st) == 0


def test_binary_form_structure():
    f = BinaryForm(3, [0, 2, 0, 0])       # 2 s^2 t
    assert f.t_multiplicity() == 1
    assert f.dense_s() == [0, 0, F(2)]
    g = BinaryForm.from_dense_s(3, [0, 0, F(2)])
    assert g == f
    assert f(F(3), F(1)) == 18


def test_binary_gcd_and_wronskian():
    a = BinaryForm(2, [1, 0, -1])         # (s-t)(s+t)
    b = BinaryForm(2, [1, -2, 1])         # (s-t)^2
    g = binary_gcd(a, b)
    assert g.degree == 1 and g.dense_s() == [F(-1), F(1)]
    # wronskian of a degree-d pair has degree 2d - 2
    A = BinaryForm(2, [1, 0, 1])
    B = BinaryForm(2, [0, 1, 0])
    w = wronskian(A, B)
    assert w.degree == 2
    assert not w.is_zero()


def test_interpolate_and_det_form_matrix():
    pts = [(F(k), F(2 * k * k - 3 * k + 1)) for k in range(5)]
    assert interpolate(pts) == [F(1), F(-3), F(2)]
    z = BinaryForm(0, [0])
    s = BinaryForm(1, [1, 0])
    t = BinaryForm(1, [0, 1])
    mat = [[s, z], [z, t]]
    d = det_form_matrix(mat, 2)
    assert d == BinaryForm(2, [0, 1, 0])
    mat2 = [[s, t], [t, s]]
    d2 = det_form_matrix(mat2, 2)
    assert d2 == BinaryForm(2, [1, 0, -1])  # s^2 - t^2
