import random
import warnings
from fractions import Fraction as F

import pytest

from biconic.conic import TernaryQuadraticForm as TQF
from biconic.errors import (DegenerateData, IndeterminatePoint, PointNotOnSurface,
                            SingularFiber)
from biconic.polys import binary_resultant
from biconic.surface import (BiConicSurface, Certificate, ClosedSurfacePoint,
                             NoCertificate, SurfacePoint, bad_locus,
                             bad_locus_intersection, build_surface, check_hypotheses,
                             check_smooth, discriminant_sextic, eval_fibration,
                             fiber_at, fiber_intersection_number,
                             obstruction_certificate, ramification_of_restriction,
                             search_points, singular_fiber_table)


def test_build_paper_surface(gbsp):
    # q^2 + r1 r2 = (x^2+2y^2)^2 + z^4 - 4y^4 = x^4 + 4x^2y^2 + z^4
    coeffs = {m: c for m, c in zip(
        __import__("biconic.surface", fromlist=["QUARTIC_MONOMIALS"]).QUARTIC_MONOMIALS,
        gbsp.f4_coeffs) if c != 0}
    assert coeffs == {(4, 0, 0): 1, (0, 0, 4): 1, (2, 2, 0): 4}


def test_build_degenerate():
    with pytest.raises(DegenerateData):
        # w^2 = x^2 y^2: square f4, identically rank <= 2 pencil
        build_surface(TQF(0, 0, 0), TQF(1, 0, 0), TQF(0, 1, 0))


def test_build_random_smooth_accepted(smooth1):
    assert check_smooth(smooth1).smooth


def test_surface_point_normalization():
    p = SurfacePoint(2, 2, 2, 4)
    assert p.coords() == (1, 1, 1, 1)
    p = SurfacePoint(-2, 0, 2, 4)   # lambda = 2 needs lambda^2 | w
    assert p.coords() == (1, 0, -1, 1)
    p = SurfacePoint(-1, 0, 1, 3)
    assert p.coords() == (1, 0, -1, 3)
    assert SurfacePoint(2, 2, 2, 2).coords() == (2, 2, 2, 2)  # 4 does not divide 2


def test_eval_fibration_examples(gbsp):
    assert eval_fibration(gbsp, 1, SurfacePoint(0, 1, 1, -1)) == (3, 1)
    assert eval_fibration(gbsp, 1, SurfacePoint(1, 0, 0, 1)) == (0, 1)   # fallback
    assert eval_fibration(gbsp, 2, SurfacePoint(1, 0, 0, 1)) == (1, 0)
    with pytest.raises(PointNotOnSurface):
        eval_fibration(gbsp, 1, SurfacePoint(1, 1, 1, 1))


def test_fiber_examples(gbsp):
    f = fiber_at(gbsp, 1, (0, 1))
    assert f.conic.integer_coeffs() == TQF(0, 2, 1).integer_coeffs()  # -r2 ~ r2
    assert f.rank == 2
    f2 = fiber_at(gbsp, 2, (0, 1))
    assert f2.conic.coeffs == f.conic.coeffs and f2.eps == -f.eps
    f31 = fiber_at(gbsp, 1, (3, 1))
    assert f31.conic.coeffs == TQF(6, -8, 8).coeffs
    assert f31.smooth
    assert gbsp.disc(F(3), F(1)) == -384


def test_fiber_points_satisfy_surface(gbsp, smooth1):
    rng = random.Random(43)
    from biconic.conic import NoPoint, find_rational_point
    for surf in (gbsp, smooth1):
        sampled = 0
        for _ in range(100):  # 100 random parameters per fixture
            s, t = rng.randint(-9, 9), rng.randint(-9, 9)
            if (s, t) == (0, 0):
                continue
            for i in (1, 2):
                fib = fiber_at(surf, i, (s, t))
                if not fib.smooth:
                    continue
                got = find_rational_point(fib.conic)
                if isinstance(got, NoPoint):
                    continue
                pt = fib.lift_plane_point(got)
                assert surf.contains(pt)
                assert eval_fibration(surf, i, pt) == fib.param
                sampled += 1
        assert sampled > 20


def test_discriminant_sextic(gbsp, smooth1):
    d = discriminant_sextic(gbsp)
    assert d.degree == 6
    # -4 s t (s-t)^3 (s+t)
    assert list(d.coeffs) == [0, -4, 8, 0, -8, 4, 0]
    d2 = discriminant_sextic(smooth1)
    assert d2.degree == 6
    from biconic.polys import pdeg, pgcd, pstrip
    dense = d2.dense_s()
    der = pstrip([dense[i] * i for i in range(1, len(dense))])
    assert pdeg(pgcd(dense, der)) == 0  # squarefree: six distinct parameters


def test_singular_fiber_table_gbsp(gbsp):
    tab = singular_fiber_table(gbsp, 1)
    entries = {r.parameter.label(): r for r in tab}
    assert set(entries) == {"[1:0]", "[0:1]", "[1:1]", "[1:-1]"}
    assert entries["[1:1]"].classification == "rank1-degenerate"
    assert entries["[1:1]"].multiplicity == 3
    for label, lift, field in [("[0:1]", (1, 0, 0, 1), "Q(sqrt(-2))"),
                               ("[1:0]", (1, 0, 0, -1), "Q(sqrt(2))"),
                               ("[1:-1]", (0, 0, 1, -1), "Q(sqrt(-1))")]:
        rep = entries[label]
        assert rep.classification == "nonsplit"
        assert rep.node_lift.to_surface_point().coords() == lift
        assert rep.splitting_label == field
    # sign duality: pi_2 lifts are the w-negations
    tab2 = singular_fiber_table(gbsp, 2)
    lifts1 = {r.parameter.label(): r.node_lift for r in tab if r.rank == 2}
    lifts2 = {r.parameter.label(): r.node_lift for r in tab2 if r.rank == 2}
    for label in lifts1:
        p1 = lifts1[label].to_surface_point()
        p2 = lifts2[label].to_surface_point()
        assert p2 == p1.negate_w()


def test_singular_fiber_table_smooth1(smooth1):
    for i in (1, 2):
        tab = singular_fiber_table(smooth1, i)
        assert all(r.rank == 2 for r in tab)
        assert sum(r.parameter.field.degree * r.multiplicity for r in tab) == 6


def test_bad_locus(gbsp):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        b1 = bad_locus(gbsp, 1)
        b2 = bad_locus(gbsp, 2)
    pts1 = {p.to_surface_point().coords() for p in b1}
    pts2 = {p.to_surface_point().coords() for p in b2}
    assert pts1 == {(1, 0, 0, 1), (1, 0, 0, -1), (0, 0, 1, -1)}
    assert pts2 == {(1, 0, 0, -1), (1, 0, 0, 1), (0, 0, 1, 1)}
    inter = bad_locus_intersection(gbsp)
    assert {p.to_surface_point().coords() for p in inter} == {(1, 0, 0, 1), (1, 0, 0, -1)}


def test_rank1_warns(gbsp):
    with pytest.warns(UserWarning):
        bad_locus(gbsp, 1)


def test_sign_lift_intersection_criterion(gbsp, smooth1):
    """A node lift lies in both bad loci iff its w-coordinate vanishes or both
    sign-lifts of its plane node occur in Bad(pi_1)."""
    from biconic.surface import ClosedSurfacePoint, closed_points_equal
    for surf in (gbsp, smooth1):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            b1 = bad_locus(surf, 1)
            b2 = bad_locus(surf, 2)
        inter = bad_locus_intersection(surf)
        for p in b1:
            x, y, z, w = p.coords
            negated = ClosedSurfacePoint(p.field, (x, y, z, -w))
            expected = w.is_zero() or any(closed_points_equal(negated, q) for q in b1)
            got = any(closed_points_equal(p, q) for q in inter)
            assert got == expected


def test_check_smooth(gbsp, smooth1):
    rep = check_smooth(gbsp)
    assert not rep.smooth
    assert [p.to_surface_point().coords() for p in rep.singular_points] == [(0, 1, 0, 0)]
    assert check_smooth(smooth1).smooth


def test_check_smooth_nonisolated():
    # q = xy, r1 = x^2, r2 = z^2 - 2y^2: f4 = x^2 (z^2 - y^2), singular along
    # the whole line x = 0
    surf = build_surface(TQF(0, 0, 0, 1, 0, 0), TQF(1, 0, 0),
                         TQF(0, -2, 1))
    rep = check_smooth(surf)
    assert not rep.smooth
    assert not rep.isolated


def test_hypotheses_gbsp(gbsp):
    rep = check_hypotheses(gbsp, seed=0)
    assert rep.condition_a and rep.intersection_number == 4
    assert all(n == 4 for _, _, n in rep.samples)
    assert not rep.condition_b
    assert {w.to_surface_point().coords() for w in rep.witnesses} == \
        {(1, 0, 0, 1), (1, 0, 0, -1)}
    assert rep.eckardt_counts == (4, 4)
    assert len(rep.certificates) == 2


def test_hypotheses_smooth1(smooth1):
    rep = check_hypotheses(smooth1, seed=0)
    assert rep.condition_a and rep.intersection_number == 4
    assert rep.condition_b and not rep.witnesses


def test_intersection_number_any_pair(gbsp, smooth1):
    rng = random.Random(47)
    for surf in (gbsp, smooth1):
        done = 0
        while done < 3:
            p1 = (rng.randint(1, 9), rng.randint(1, 9))
            p2 = (rng.randint(1, 9), rng.randint(1, 9))
            if surf.disc(F(p1[0]), F(p1[1])) == 0 or surf.disc(F(p2[0]), F(p2[1])) == 0:
                continue
            if p1 == p2:
                continue
            assert fiber_intersection_number(surf, p1, p2) == 4
            done += 1


def test_certificates(gbsp, smooth1):
    cert = obstruction_certificate(gbsp, SurfacePoint(1, 0, 0, 1))
    assert isinstance(cert, Certificate)
    assert cert.t1 == (0, 1) and cert.t2 == (1, 0)
    assert cert.L1_label == "Q(sqrt(-2))" and cert.L2_label == "Q(sqrt(2))"
    assert cert.verdict == "f'_n not arithmetically surjective for all n >= 3"
    got = obstruction_certificate(gbsp, SurfacePoint(0, 1, 1, -1))
    assert isinstance(got, NoCertificate)
    assert "condition 1" in got.failed_condition
    # on the smooth fixture the bad points are irrational; any rational point
    # fails condition 1
    pts = search_points(smooth1, 2)
    got = obstruction_certificate(smooth1, pts[0])
    assert isinstance(got, NoCertificate)


def test_ramification(gbsp, smooth1):
    fib = fiber_at(gbsp, 1, (3, 1))
    ram = ramification_of_restriction(gbsp, fib, point=(0, 1, 1))
    assert ram.wronskian_form.degree == 6
    total = sum((len(f) - 1 if f else 1) * m for f, m in ram.wronskian_factors)
    assert total == 6
    assert ram.branch_form.degree == 6
    with pytest.raises(SingularFiber):
        ramification_of_restriction(gbsp, fiber_at(gbsp, 1, (0, 1)))


def test_ramification_disjoint_branch_loci(smooth1):
    from biconic.conic import NoPoint, find_rational_point
    fibs = []
    rng = random.Random(53)
    while len(fibs) < 2:
        s, t = rng.randint(-9, 9), rng.randint(1, 9)
        fib = fiber_at(smooth1, 1, (s, t)) if (s, t) != (0, 0) else None
        if fib is None or not fib.smooth:
            continue
        pt = find_rational_point(fib.conic)
        if isinstance(pt, NoPoint):
            continue
        if any(f.param == fib.param for f in fibs):
            continue
        fibs.append(fib)
    r1 = ramification_of_restriction(smooth1, fibs[0])
    r2 = ramification_of_restriction(smooth1, fibs[1])
    assert binary_resultant(r1.branch_form, r2.branch_form) != 0


def test_indeterminate_point(gbsp):
    # GBsp's singular point still evaluates (it sits on the rank-1 member)
    assert eval_fibration(gbsp, 1, SurfacePoint(0, 1, 0, 0)) == (1, 1)
    # q = xy, r1 = xz, r2 = yz: all four fibration forms vanish at [1:0:0:0]
    surf = build_surface(TQF(0, 0, 0, 1, 0, 0), TQF(0, 0, 0, 0, 1, 0),
                         TQF(0, 0, 0, 0, 0, 1))
    with pytest.raises(IndeterminatePoint):
        eval_fibration(surf, 1, SurfacePoint(1, 0, 0, 0))


def test_search_points(gbsp):
    pts = search_points(gbsp, 2)
    assert SurfacePoint(1, 0, 0, 1) in pts
    assert SurfacePoint(1, 0, 0, -1) in pts
    assert SurfacePoint(0, 1, 1, -1) in pts
    for p in pts:
        assert gbsp.contains(p)
