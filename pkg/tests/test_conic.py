import random
from fractions import Fraction as F

import pytest

from biconic.conic import (ConicParametrization, NoPoint, TernaryQuadraticForm,
                           ZeroCyclePoint, classify_form, find_rational_point,
                           intersect_conics, local_solvable, parametrize)
from biconic.errors import (CommonComponent, DegenerateConic, PointNotOnConic,
                            SearchBudgetExceeded, ZeroForm)
from biconic.hilbert import REAL
from biconic.numberfield import QQ, number_field


def test_classify_rank3():
    assert classify_form(TernaryQuadraticForm(1, 1, -1)).rank == 3


def test_classify_rank2_nodes_and_fields():
    c = classify_form(TernaryQuadraticForm(0, -2, 1))   # z^2 - 2y^2
    assert c.rank == 2
    assert [v.as_rational() for v in c.node] == [1, 0, 0]
    assert c.split is False
    assert c.splitting_label == "Q(sqrt(2))"
    c = classify_form(TernaryQuadraticForm(0, 2, 1))    # z^2 + 2y^2
    assert c.rank == 2 and not c.split and c.splitting_label == "Q(sqrt(-2))"
    c = classify_form(TernaryQuadraticForm(0, -4, 1))   # z^2 - 4y^2 splits
    assert c.rank == 2 and c.split


def test_classify_rank1_and_zero():
    c = classify_form(TernaryQuadraticForm(1, 0, 0))    # x^2
    assert c.rank == 1
    assert [v.as_rational() for v in c.repeated_line] == [1, 0, 0]
    with pytest.raises(ZeroForm):
        classify_form(TernaryQuadraticForm(0, 0, 0))


def test_classify_over_number_field():
    k = number_field([F(-2), F(0), F(1)])   # Q(sqrt 2)
    th = k.gen()
    # z^2 - 2 y^2 splits over Q(sqrt 2)
    coeffs = (k.zero(), k.element(-2), k.one(), k.zero(), k.zero(), k.zero())
    c = classify_form(coeffs, k)
    assert c.rank == 2 and c.split
    # z^2 - theta y^2: theta is a square in Q(sqrt 2)? no (norm -2 < 0 not a square)
    coeffs = (k.zero(), -th, k.one(), k.zero(), k.zero(), k.zero())
    c = classify_form(coeffs, k)
    assert c.rank == 2 and not c.split


def test_congruence_invariance_of_rank():
    rng = random.Random(31)
    for _ in range(100):
        q = TernaryQuadraticForm(*(rng.randint(-5, 5) for _ in range(6)))
        if q.is_zero():
            continue
        rk = q.rank()
        # random unimodular change of coordinates
        a, b, c = rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3)
        x, y, z = F(1), F(0), F(0)
        m = [[1, a, b], [0, 1, c], [0, 0, 1]]
        rows = [[sum(F(m[i][k]) * q.gram()[k][l] for k in range(3)) for l in range(3)]
                for i in range(3)]
        gram2 = [[sum(rows[i][k] * F(m[j][k]) for k in range(3)) for j in range(3)]
                 for i in range(3)]
        q2 = TernaryQuadraticForm(gram2[0][0], gram2[1][1], gram2[2][2],
                                  2 * gram2[0][1], 2 * gram2[0][2], 2 * gram2[1][2])
        assert q2.rank() == rk


def test_splitness_complement_independent():
    # the square class of the binary discriminant does not depend on which
    # complement of the radical is chosen
    from biconic.intmath import squarefree_part
    q = TernaryQuadraticForm(0, -2, 1)    # node [1:0:0]
    m = q.gram()
    cores = set()
    for (i, j) in [(1, 2), (2, 1)]:
        disc = (2 * m[i][j]) ** 2 - 4 * m[i][i] * m[j][j]
        cores.add(squarefree_part(disc.numerator * disc.denominator))
    assert len(cores) == 1


def test_local_solvable():
    assert local_solvable(TernaryQuadraticForm(1, 1, -1), REAL)
    assert not local_solvable(TernaryQuadraticForm(1, 1, 1), REAL)
    assert not local_solvable(TernaryQuadraticForm(1, 1, -3), 3)
    with pytest.raises(DegenerateConic):
        local_solvable(TernaryQuadraticForm(1, 1, 0), 3)


def test_find_point_examples():
    pt = find_rational_point(TernaryQuadraticForm(1, 1, -1))
    assert TernaryQuadraticForm(1, 1, -1)(*pt) == 0
    r = find_rational_point(TernaryQuadraticForm(1, 1, -3))
    assert isinstance(r, NoPoint) and r.witness == 3
    pt = find_rational_point(TernaryQuadraticForm(2, 3, -5))
    assert TernaryQuadraticForm(2, 3, -5)(*pt) == 0


def test_find_point_nondiagonal():
    rng = random.Random(37)
    solved = 0
    for _ in range(40):
        q = TernaryQuadraticForm(*(rng.randint(-8, 8) for _ in range(6)))
        if q.rank() != 3:
            continue
        res = find_rational_point(q)
        if not isinstance(res, NoPoint):
            assert q(*res) == 0
            solved += 1
    assert solved > 5


def test_search_fallback():
    pt = find_rational_point(TernaryQuadraticForm(1, 1, -1), use_descent=False,
                             search_bound=5)
    assert TernaryQuadraticForm(1, 1, -1)(*pt) == 0
    with pytest.raises(SearchBudgetExceeded):
        # locally solvable (13 = 2^2 + 3^2) but the smallest solution (2,3,1)
        # exceeds the tiny budget
        find_rational_point(TernaryQuadraticForm(1, 1, -13), use_descent=False,
                            search_bound=2)


def test_parametrize_pythagorean():
    q = TernaryQuadraticForm(1, 1, -1)
    par = parametrize(q, (1, 0, 1))
    # classical identity up to normalization: (u^2 - v^2, 2uv, u^2 + v^2)
    pts = {par.point_at(a, b) for a, b in [(1, 0), (0, 1), (1, 2), (2, 1), (3, 5)]}
    assert (3, -4, -5) in pts or (3, 4, 5) in pts
    for p in pts:
        assert q(*p) == 0
    assert len(pts) == 5
    # base point attained
    attained = any(par.point_at(a, b) == (1, 0, 1)
                   for a in range(-5, 6) for b in range(-5, 6) if (a, b) != (0, 0))
    assert attained


def test_parametrize_after_find_50_params():
    """find + parametrize: 50 sampled parameters give pairwise distinct points
    on the conic, with the base point attained."""
    import math
    rng = random.Random(59)
    solved = 0
    while solved < 3:
        q = TernaryQuadraticForm(*(rng.randint(-10, 10) for _ in range(6)))
        if q.rank() != 3:
            continue
        got = find_rational_point(q)
        if isinstance(got, NoPoint):
            continue
        solved += 1
        par = parametrize(q, got)
        params = [(a, b) for a in range(-7, 8) for b in range(0, 8)
                  if (a, b) != (0, 0) and math.gcd(a, b) == 1 and not (b == 0 and a != 1)]
        pts = [par.point_at(a, b) for a, b in params[:50]]
        assert len(set(pts)) == len(pts)
        for p in pts:
            assert q(*p) == 0
        assert any(par.point_at(a, b) == tuple(got) for a, b in params[:50]) or \
            par.parameter_of(got) is not None


def test_parametrize_identity_substitution():
    q = TernaryQuadraticForm(2, 3, -5)
    par = parametrize(q, (1, 1, 1))
    for a, b in [(1, 0), (0, 1), (2, -3), (7, 5)]:
        assert q(*par.point_at(a, b)) == 0


def test_parametrize_inverse():
    q = TernaryQuadraticForm(1, 1, -1)
    par = parametrize(q, (1, 0, 1))
    for a, b in [(1, 2), (3, 5), (-2, 7)]:
        pt = par.point_at(a, b)
        al, be = par.parameter_of(pt)
        assert al * b == be * a  # same projective parameter


def test_parametrize_errors():
    with pytest.raises(PointNotOnConic):
        parametrize(TernaryQuadraticForm(1, 1, -1), (1, 1, 1))
    with pytest.raises(DegenerateConic):
        parametrize(TernaryQuadraticForm(1, -1, 0), (1, 1, 0))


def test_intersect_example_cuspidal():
    pts = intersect_conics(TernaryQuadraticForm(1, 0, 0, 0, 0, -1),   # x^2 - yz
                           TernaryQuadraticForm(0, 1, 0, 0, -1, 0))   # y^2 - xz
    total = sum(p.degree() * p.multiplicity for p in pts)
    assert total == 4
    rational = sorted(p.rational_coords() for p in pts if p.is_rational())
    assert rational == [(0, 0, 1), (1, 1, 1)]
    conj = [p for p in pts if not p.is_rational()]
    assert len(conj) == 1 and conj[0].degree() == 2
    # the conjugate pair is defined over Q[u]/(u^2 + u + 1): same square class
    # of the discriminant (-3), whatever generator the projection chose
    from biconic.intmath import squarefree_part
    c0, c1, _ = conj[0].field.modulus
    disc = c1 * c1 - 4 * c0
    assert squarefree_part(disc.numerator * disc.denominator) == -3


def test_intersect_example_tangent_pair():
    pts = intersect_conics(TernaryQuadraticForm(1, 1, -1),
                           TernaryQuadraticForm(1, 1, -4))
    assert sum(p.degree() * p.multiplicity for p in pts) == 4
    assert all(not p.is_rational() for p in pts)
    assert {p.multiplicity for p in pts} == {2}


def test_intersect_common_component():
    q = TernaryQuadraticForm(1, 1, -1)
    with pytest.raises(CommonComponent):
        intersect_conics(q, q)
    with pytest.raises(CommonComponent):
        intersect_conics(q, q.scale(3))


def test_intersect_total_multiplicity_random():
    rng = random.Random(41)
    done = 0
    while done < 20:
        q1 = TernaryQuadraticForm(*(rng.randint(-4, 4) for _ in range(6)))
        q2 = TernaryQuadraticForm(*(rng.randint(-4, 4) for _ in range(6)))
        if q1.is_zero() or q2.is_zero():
            continue
        try:
            pts = intersect_conics(q1, q2)
        except CommonComponent:
            continue
        assert sum(p.degree() * p.multiplicity for p in pts) == 4
        done += 1
