import pytest

from biconic.errors import SeedOnSingularFiber, SingularFiberAtNode, TargetNotLiftable
from biconic.localpoints import reduce_surface_point, smooth_classes
from biconic.propagate import (PropConfig, PropNode, SteerFailure, SteerResult,
                               coverage_probe, expand_node, expansion_fibration,
                               generate_points, good_primes, steer_to_target)
from biconic.surface import SurfacePoint, eval_fibration


def root_node(pt):
    return PropNode(point=pt, depth=0, parent=None, parameter=None,
                    height=pt.height())


def test_expansion_parity():
    assert [expansion_fibration(n) for n in (1, 2, 3, 4, 5)] == [1, 2, 1, 2, 1]


def test_expand_node(gbsp, gbsp_seed):
    kids = expand_node(gbsp, root_node(gbsp_seed), [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)])
    assert len({k.point.coords() for k in kids}) == 5
    for k in kids:
        assert gbsp.contains(k.point)
        assert eval_fibration(gbsp, 1, k.point) == (3, 1)


def test_expand_anchor_reproduced(gbsp, gbsp_seed):
    hits = [expand_node(gbsp, root_node(gbsp_seed), [(a, b)])[0].point
            for a in range(-6, 7) for b in range(-6, 7) if (a, b) != (0, 0)]
    assert gbsp_seed in hits


def test_expand_singular_node(gbsp):
    with pytest.raises(SingularFiberAtNode):
        expand_node(gbsp, root_node(SurfacePoint(1, 0, 0, 1)), [(1, 1)])


def test_generate_depth0(gbsp, gbsp_seed):
    res = generate_points(gbsp, gbsp_seed, PropConfig(max_depth=0))
    assert res.points() == [gbsp_seed]


def test_generate_depth1_single_fiber(gbsp, gbsp_seed):
    res = generate_points(gbsp, gbsp_seed, PropConfig(max_depth=1, branching=6,
                                                      param_height=8))
    params = {eval_fibration(gbsp, 1, n.point) for n in res.nodes}
    assert params == {(3, 1)}  # all depth-1 points on one pi_1 fiber


def test_generate_depth2(gbsp, gbsp_seed, smooth1, smooth1_seed):
    for surf, seed in ((gbsp, gbsp_seed), (smooth1, smooth1_seed)):
        res = generate_points(surf, seed, PropConfig(max_depth=2, branching=8,
                                                     param_height=20))
        for n in res.nodes:
            assert surf.contains(n.point)
            assert n.height == n.point.height()
            if n.depth >= 1:
                i = expansion_fibration(n.depth)
                parent = res.nodes[n.parent]
                assert eval_fibration(surf, i, n.point) == \
                    eval_fibration(surf, i, parent.point)
        assert res.stats.depth2_pi1_params >= 3
        assert res.stats.depth2_pi2_params >= 3
        # dedup: unique points
        coords = [n.point.coords() for n in res.nodes]
        assert len(coords) == len(set(coords))


def test_generate_deterministic(gbsp, gbsp_seed):
    cfg = PropConfig(max_depth=2, branching=5, param_height=10, seed=3)
    assert generate_points(gbsp, gbsp_seed, cfg) == generate_points(gbsp, gbsp_seed, cfg)


def test_seed_on_singular_fiber(gbsp):
    with pytest.raises(SeedOnSingularFiber):
        generate_points(gbsp, SurfacePoint(1, 0, 0, 1), PropConfig(max_depth=1))


def test_steer_reflexive(smooth1, smooth1_seed):
    p = 11
    own = reduce_surface_point(smooth1_seed, p, 1, smooth1)
    res = steer_to_target(smooth1, smooth1_seed, own, depth=5,
                          cfg=PropConfig(seed=0, retries=10))
    assert isinstance(res, SteerResult)
    assert len(res.path) == 6
    # chain discipline and exact final congruence, re-verified here
    for k in range(1, 6):
        i = expansion_fibration(k)
        assert eval_fibration(smooth1, i, res.path[k].point) == \
            eval_fibration(smooth1, i, res.path[k - 1].point)
    got = reduce_surface_point(res.path[-1].point, p, 1, smooth1)
    assert got.coords == own.coords


def test_steer_deterministic(smooth1, smooth1_seed):
    p = 11
    cls = smooth_classes(smooth1, p, 1)[5]
    cfg = PropConfig(seed=7, retries=8)
    r1 = steer_to_target(smooth1, smooth1_seed, cls, depth=4, cfg=cfg)
    r2 = steer_to_target(smooth1, smooth1_seed, cls, depth=4, cfg=cfg)
    assert type(r1) is type(r2)
    if isinstance(r1, SteerResult):
        assert [n.point.coords() for n in r1.path] == \
            [n.point.coords() for n in r2.path]


def test_steer_not_liftable(smooth1, smooth1_seed, gbsp, gbsp_seed):
    from biconic.localpoints import enumerate_residues
    bad = [t for t in enumerate_residues(gbsp, 3) if not t.smooth]
    with pytest.raises(TargetNotLiftable):
        steer_to_target(gbsp, gbsp_seed, bad[0], depth=3, cfg=PropConfig(retries=2))


def test_good_primes(smooth1, smooth1_seed, gbsp, gbsp_seed):
    assert good_primes(smooth1, smooth1_seed, count=3) == [11, 17, 19]
    assert 2 not in good_primes(gbsp, gbsp_seed, count=3)


def test_probe_depth0(smooth1, smooth1_seed):
    stats = coverage_probe(smooth1, smooth1_seed, 11, 1, depth=0)
    assert stats.total_smooth - len(stats.missed) == 1  # exactly the seed's class


def test_steer_toward_gbsp_bad_point_logged(gbsp, gbsp_seed, capsys):
    """Exploratory: steering toward the residue class of the obstructed bad
    point [1:0:0:1] at p = 5 (inert in both splitting fields).  The outcome
    is logged, not asserted: the obstruction concerns a blowup direction, so
    no behavior is guaranteed at the residue-class level."""
    target = reduce_surface_point(SurfacePoint(1, 0, 0, 1), 5, 1, gbsp)
    assert target.smooth  # the bad point is a smooth point of X
    res = steer_to_target(gbsp, gbsp_seed, target, depth=5,
                          cfg=PropConfig(seed=0, retries=10))
    outcome = "reached" if isinstance(res, SteerResult) else \
        f"not reached ({res.phase}: {res.reason})"
    print(f"[exploratory] GBsp bad-point class at p=5: {outcome}")
    assert isinstance(res, (SteerResult, SteerFailure))


def test_probe_monotone_small(smooth1, smooth1_seed):
    stats = coverage_probe(smooth1, smooth1_seed, 11, 1, depth=3,
                           cfg=PropConfig(seed=0, retries=6))
    hits = stats.hits_per_depth
    assert all(hits[i] <= hits[i + 1] for i in range(len(hits) - 1))
    assert hits[0] >= 1
