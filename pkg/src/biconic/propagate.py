"""Point propagation along the two fibrations.

A chain P0 -> P1 -> ... alternates fibrations: the step into depth n moves
inside a fiber of pi_1 when n is odd and of pi_2 when n is even.  The engine
materializes chains of rational points (breadth-first generation), steers a
depth-n chain onto a prescribed residue class by a backward p-adic phase
followed by a forward rational-reconstruction phase, and probes residue-class
coverage at small good primes.  All arithmetic is exact; p-adic work is
integer arithmetic modulo p^M with explicit precision bookkeeping.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, replace
from fractions import Fraction

from .conic import parametrize
from .errors import (BadPrime, ForbiddenParameter, SeedOnSingularFiber,
                     SingularFiberAtNode, TargetNotLiftable)
from .intmath import factorint, primitive_tuple, rational_reconstruct, valuation
from .localpoints import (ResidueTarget, lift_point, reduce_surface_point,
                          smooth_classes)
from .polys import pdeg, pgcd, pstrip
from .surface import BiConicSurface, Fiber, SurfacePoint, eval_fibration, fiber_at


def expansion_fibration(depth: int) -> int:
    """Fibration used by the step into the given depth (1 odd, 2 even)."""
    return 1 if depth % 2 == 1 else 2


@dataclass(frozen=True)
class PropNode:
    point: SurfacePoint
    depth: int
    parent: int | None        # index into the owning node list
    parameter: tuple[int, int] | None   # parametrization parameter used
    height: int

    def next_fibration(self) -> int:
        return expansion_fibration(self.depth + 1)


@dataclass(frozen=True)
class PropConfig:
    max_depth: int = 5
    branching: int = 8
    param_height: int = 10
    seed: int = 0
    target: ResidueTarget | None = None
    retries: int = 20

    def __post_init__(self):
        if self.max_depth < 0 or self.branching < 1 or self.param_height < 1 \
                or self.retries < 1:
            raise ValueError("propagation bounds must be positive")


def _param_candidates(height: int):
    """Primitive projective parameters [a:b], |a|,|b| <= height, in spiral
    order (ring by max(|a|,|b|), then lexicographic), sign-normalized."""
    import math
    out = [(1, 0), (0, 1), (1, 1), (1, -1)]
    for h in range(2, height + 1):
        ring = []
        for a in range(0, h + 1):
            for b in range(-h, h + 1):
                if max(abs(a), abs(b)) != h:
                    continue
                if a == 0 and b < 0:
                    continue
                if math.gcd(a, b) != 1:
                    continue
                ring.append((a, b))
        out.extend(sorted(ring))
    return out


def _expansion_chart(surf: BiConicSurface, node: PropNode):
    """(fiber, parametrization) for expanding the node along its next fibration."""
    i = node.next_fibration()
    t = eval_fibration(surf, i, node.point)
    fib = fiber_at(surf, i, t)
    if fib.rank == 1:
        raise ForbiddenParameter(
            f"pi_{i} fiber over {t} is a rank-1 pencil member")
    if fib.rank == 2:
        raise SingularFiberAtNode(
            f"point {node.point} sits on the singular pi_{i} fiber over {t}")
    par = parametrize(fib.conic, primitive_tuple(node.point.plane()))
    return fib, par


def expand_node(surf: BiConicSurface, node: PropNode, params) -> list[PropNode]:
    """Children of a node on the fiber of its next fibration, one per given
    parameter.  The parametrization is anchored at the node's point, so the
    anchor parameter reproduces the node itself."""
    fib, par = _expansion_chart(surf, node)
    out = []
    for a, b in params:
        plane = par.point_at(int(a), int(b))
        child = fib.lift_plane_point(plane)
        out.append(PropNode(point=child, depth=node.depth + 1, parent=None,
                            parameter=(int(a), int(b)), height=child.height()))
    return out


@dataclass(frozen=True)
class GenerationStats:
    per_depth_new: tuple          # newly seen points per depth 0..max
    depth2_pi1_params: int        # distinct pi_1 parameters among depth-2 points
    depth2_pi2_params: int
    dead_ends: int                # nodes on singular fibers of their next fibration


@dataclass(frozen=True)
class GenerationResult:
    nodes: tuple                  # PropNode, BFS order, deduplicated by point
    stats: GenerationStats

    def points(self) -> list[SurfacePoint]:
        return [n.point for n in self.nodes]


def generate_points(surf: BiConicSurface, p0: SurfacePoint,
                    cfg: PropConfig) -> GenerationResult:
    """Breadth-first chain expansion with the parity rule; children are the
    branching-many smallest (by height, then coordinates) new points reachable
    with parameters up to the configured height."""
    surf.require_point(p0)
    if not fiber_at(surf, 1, eval_fibration(surf, 1, p0)).smooth:
        raise SeedOnSingularFiber(f"pi_1 fiber through {p0} is singular")
    candidates = _param_candidates(cfg.param_height)
    root = PropNode(point=p0, depth=0, parent=None, parameter=None,
                    height=p0.height())
    nodes = [root]
    seen = {p0.coords(): 0}
    frontier = [0]
    dead = 0
    per_depth = [1] + [0] * cfg.max_depth
    for depth in range(1, cfg.max_depth + 1):
        new_frontier = []
        for idx in frontier:
            node = nodes[idx]
            try:
                fib, par = _expansion_chart(surf, node)
            except (SingularFiberAtNode, ForbiddenParameter):
                dead += 1
                continue
            taken = 0
            # spiral parameter order; keep the first branching-many new points
            for a, b in candidates:
                if taken >= cfg.branching:
                    break
                child = fib.lift_plane_point(par.point_at(a, b))
                key = child.coords()
                if key in seen:
                    continue
                seen[key] = len(nodes)
                nodes.append(PropNode(point=child, depth=depth, parent=idx,
                                      parameter=(a, b), height=child.height()))
                new_frontier.append(len(nodes) - 1)
                per_depth[depth] += 1
                taken += 1
        frontier = new_frontier
    d2_1 = len({eval_fibration(surf, 1, n.point) for n in nodes if n.depth == 2})
    d2_2 = len({eval_fibration(surf, 2, n.point) for n in nodes if n.depth == 2})
    stats = GenerationStats(per_depth_new=tuple(per_depth),
                            depth2_pi1_params=d2_1, depth2_pi2_params=d2_2,
                            dead_ends=dead)
    return GenerationResult(nodes=tuple(nodes), stats=stats)


# --- p-adic helpers (integers modulo p^M) --------------------------------------


def _inv(a: int, mod: int) -> int:
    return pow(a % mod, -1, mod)


def _eval_quad_mod(q, x: int, y: int, z: int, mod: int) -> int:
    a, b, c, d, e, f = q.coeffs
    out = 0
    for cf, val in ((a, x * x), (b, y * y), (c, z * z),
                    (d, x * y), (e, x * z), (f, y * z)):
        if cf == 0:
            continue
        n = cf.numerator % mod
        if cf.denominator != 1:
            n = n * _inv(cf.denominator, mod) % mod
        out = (out + n * val) % mod
    return out


def _pencil_coeffs_mod(surf: BiConicSurface, s: int, t: int, mod: int) -> tuple[int, ...]:
    out = []
    for cq, c1, c2 in zip(surf.q.coeffs, surf.r1.coeffs, surf.r2.coeffs):
        num = 0
        for cf, mul in ((c1, s * s), (cq, 2 * s * t), (c2, -t * t)):
            if cf == 0:
                continue
            n = cf.numerator % mod
            if cf.denominator != 1:
                n = n * _inv(cf.denominator, mod) % mod
            num = (num + n * mul) % mod
        out.append(num)
    return tuple(out)


def _conic_value_mod(co6, x: int, y: int, z: int, mod: int) -> int:
    a, b, c, d, e, f = co6
    return (a * x * x + b * y * y + c * z * z + d * x * y + e * x * z + f * y * z) % mod


def _conic_grad_mod(co6, x: int, y: int, z: int, mod: int) -> tuple[int, int, int]:
    a, b, c, d, e, f = co6
    return ((2 * a * x + d * y + e * z) % mod,
            (2 * b * y + d * x + f * z) % mod,
            (2 * c * z + e * x + f * y) % mod)


def _disc_value_mod(surf: BiConicSurface, s: int, t: int, p: int) -> int:
    total = 0
    d = surf.disc.degree
    for i, c in enumerate(surf.disc.coeffs):
        if c == 0:
            continue
        n = c.numerator % p
        if c.denominator != 1:
            n = n * _inv(c.denominator, p) % p
        total = (total + n * pow(s, d - i, p) * pow(t, i, p)) % p
    return total


def _fibration_param_mod(surf: BiConicSurface, i: int, coords, p: int, M: int):
    """(s, t, loss): pi_i of a p-adic point, normalized so min valuation is 0;
    loss digits of precision are spent on the normalization."""
    mod = p ** M
    x, y, z, w = coords
    qv = _eval_quad_mod(surf.q, x, y, z, mod)
    r1v = _eval_quad_mod(surf.r1, x, y, z, mod)
    r2v = _eval_quad_mod(surf.r2, x, y, z, mod)
    g1, g2 = (w - qv) % mod, (w + qv) % mod
    pairs = [(g1, r1v), (r2v, g2)] if i == 1 else [((-g2) % mod, r1v), ((-r2v) % mod, g1)]
    best = None
    for s, t in pairs:
        if s == 0 and t == 0:
            continue
        v = min(valuation(s, p) if s else M, valuation(t, p) if t else M)
        if best is None or v < best[0]:
            best = (v, s, t)
    if best is None:
        return None
    v, s, t = best
    if v >= M:
        return None
    mod2 = p ** (M - v)
    return (s // p ** v) % mod2, (t // p ** v) % mod2, v


def _conic_points_mod_p(co6, p: int) -> list[tuple[int, int, int]]:
    pts = []
    for x, y, z in ([(1, y, z) for y in range(p) for z in range(p)]
                    + [(0, 1, z) for z in range(p)] + [(0, 0, 1)]):
        if _conic_value_mod(co6, x, y, z, p) == 0:
            g = _conic_grad_mod(co6, x, y, z, p)
            if any(v % p for v in g):
                pts.append((x, y, z))
    return pts


def _lift_conic_point(co6, pt, p: int, M: int, start_m: int = 1):
    """Newton-lift a smooth plane point of the conic to precision M, holding
    all but one coordinate fixed (the pivot is scaled to 1 first)."""
    mod = p ** M
    x, y, z = pt
    piv = next((i for i, c in enumerate((x, y, z)) if c % p != 0), None)
    if piv is None:
        return None
    lam = _inv((x, y, z)[piv], mod)
    v = [x * lam % mod, y * lam % mod, z * lam % mod]
    g = _conic_grad_mod(co6, v[0], v[1], v[2], p)
    active = next((i for i in (2, 1, 0) if i != piv and g[i] % p != 0), None)
    if active is None:
        return None
    k = start_m
    while k < M:
        k = min(2 * k, M)
        mk = p ** k
        c = v[active]
        for _ in range(2):
            vals = list(v)
            vals[active] = c
            fv = _conic_value_mod(co6, vals[0], vals[1], vals[2], mk)
            if fv == 0:
                break
            dv = _conic_grad_mod(co6, vals[0], vals[1], vals[2], mk)[active]
            c = (c - fv * _inv(dv, mk)) % mk
        v[active] = c
    if _conic_value_mod(co6, v[0], v[1], v[2], mod) != 0:
        return None
    return tuple(v)


def _w_lift_mod(surf: BiConicSurface, eps: int, s: int, t: int, v, p: int, M: int):
    mod = p ** M
    x, y, z = v
    qv = _eval_quad_mod(surf.q, x, y, z, mod)
    if t % p != 0:
        r1v = _eval_quad_mod(surf.r1, x, y, z, mod)
        return eps * (t * qv + s * r1v) * _inv(t, mod) % mod
    if s % p != 0:
        r2v = _eval_quad_mod(surf.r2, x, y, z, mod)
        return eps * (t * r2v - s * qv) * _inv(s, mod) % mod
    return None


def _canonical_padic(coords, p: int, M: int):
    """Normalize a weighted-projective p-adic point so the first unit plane
    coordinate is 1."""
    mod = p ** M
    x, y, z, w = (c % mod for c in coords)
    piv = next((i for i, c in enumerate((x, y, z)) if c % p != 0), None)
    if piv is None:
        return None
    lam = _inv((x, y, z)[piv], mod)
    return (x * lam % mod, y * lam % mod, z * lam % mod, w * lam * lam % mod)


def _compose_quartic_mod(co6, forms, mod: int) -> list[int]:
    """D(p_x, p_y, p_z) mod p^M for integer degree-2 binary forms: the dense
    5-vector [u^4, u^3 v, ..., v^4]."""
    fs = [[int(c) % mod for c in f.coeffs] for f in forms]

    def conv(a, b):
        out = [0] * 5
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % mod
        return out

    a, b, c, d, e, f = co6
    x, y, z = fs
    total = [0] * 5
    for coef, (g, h) in ((a, (x, x)), (b, (y, y)), (c, (z, z)),
                         (d, (x, y)), (e, (x, z)), (f, (y, z))):
        if coef % mod == 0:
            continue
        part = conv(g, h)
        total = [(tv + coef * pv) % mod for tv, pv in zip(total, part)]
    return total


def _simple_quartic_roots(quartic5, p: int) -> list[tuple[int, int]]:
    """Simple projective roots mod p of a binary quartic given by its dense
    coefficients [u^4, ..., v^4]."""
    dense = list(reversed(quartic5))  # ascending in u at v = 1
    dense = [c % p for c in dense]
    f = pstrip(list(dense))
    out = []
    if f and pdeg(f) >= 1:
        df = [(i * f[i]) % p for i in range(1, len(f))]
        for u in range(p):
            fu = 0
            for c in reversed(f):
                fu = (fu * u + c) % p
            if fu:
                continue
            du = 0
            for c in reversed(df):
                du = (du * u + c) % p
            if du:
                out.append((u, 1))
    # root at [1:0]: leading coefficient vanishes; simple iff next one does not
    if quartic5[0] % p == 0 and quartic5[1] % p != 0:
        out.append((1, 0))
    return out


def _lift_quartic_root(quartic5, root, p: int, M: int):
    """Newton-lift a simple projective root of the quartic to mod p^M."""
    mod = p ** M
    u, v = root
    if v == 1:
        dense = [c % mod for c in reversed(quartic5)]
    else:
        dense = [c % mod for c in quartic5]  # chart u = 1: poly in v
        u = 0  # starting value of v in this chart
    der = [(i * dense[i]) % mod for i in range(1, len(dense))]
    c = u if v == 1 else 0
    k = 1
    while k < M:
        k = min(2 * k, M)
        mk = p ** k
        for _ in range(2):
            fv = 0
            for cf in reversed(dense):
                fv = (fv * c + cf) % mk
            if fv == 0:
                break
            dv = 0
            for cf in reversed(der):
                dv = (dv * c + cf) % mk
            c = (c - fv * _inv(dv, mk)) % mk
    if v == 1:
        return (c % mod, 1)
    return (1, c % mod)


# --- steering -----------------------------------------------------------------


@dataclass(frozen=True)
class SteerResult:
    path: tuple                  # PropNode chain, depth 0..n
    target: ResidueTarget
    verified_precision: int


@dataclass(frozen=True)
class SteerFailure:
    phase: str
    attempts: int
    reason: str


def _rng_for(seed: int, *parts) -> random.Random:
    digest = hashlib.sha256(repr((seed,) + parts).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def good_primes(surf: BiConicSurface, p0: SurfacePoint, count: int = 3,
                limit: int = 200) -> list[int]:
    """Smallest odd primes avoiding the bad set: divisors of 2, of the
    discriminant content and squarefree defect, of the seed coordinates, and
    of the discriminant value at the seed's first fiber parameter."""
    import math

    from .polys import presultant

    bad = {2}
    dense = surf.disc.dense_s()
    den = 1
    for c in surf.disc.coeffs:
        den = den * c.denominator
    num_gcd = 0
    for c in surf.disc.coeffs:
        num_gcd = math.gcd(num_gcd, int(c * den))
    for q in factorint(num_gcd or 1):
        bad.add(q)
    for q in factorint(den or 1):
        bad.add(q)
    der = pstrip([dense[i] * i for i in range(1, len(dense))])
    if der and pdeg(dense) >= 1:
        defect = presultant(dense, der)
        if defect != 0:
            for q in factorint(defect.numerator):
                bad.add(q)
            for q in factorint(defect.denominator):
                bad.add(q)
    for c in p0.coords():
        if c not in (0, 1, -1):
            for q in factorint(c):
                bad.add(q)
    s0, t0 = eval_fibration(surf, 1, p0)
    dval = surf.disc(Fraction(s0), Fraction(t0))
    if dval != 0:
        for q in factorint(dval.numerator):
            bad.add(q)
    out = []
    p = 3
    while len(out) < count and p < limit:
        from .intmath import is_prime
        if is_prime(p) and p not in bad:
            out.append(p)
        p += 2
    return out


def steer_to_target(surf: BiConicSurface, p0: SurfacePoint, target: ResidueTarget,
                    depth: int = 5, cfg: PropConfig | None = None):
    """Best-effort search for a depth-n chain P0 -> ... -> Pn with
    Pn = target mod p^m: a backward p-adic phase builds a chain of residue
    points ending on the seed's first fiber; the forward phase replaces each
    p-adic parameter by a congruent small rational one; the final congruence
    is re-verified exactly."""
    cfg = cfg or PropConfig()
    if not target.smooth:
        raise TargetNotLiftable(f"{target.coords} mod {target.p} is not smooth")
    t0 = eval_fibration(surf, 1, p0)
    if not fiber_at(surf, 1, t0).smooth:
        raise SeedOnSingularFiber(f"pi_1 fiber through {p0} is singular")
    if depth < 1:
        raise ValueError("steering needs depth >= 1")
    m_prime = target.m + 2      # guard digits on reconstructed parameters
    M = m_prime + 4             # working precision
    last_reason = "no attempts"
    phase = "backward"
    for attempt in range(cfg.retries):
        rng = _rng_for(cfg.seed, "steer", target.coords, depth, attempt)
        got = _steer_attempt(surf, p0, target, depth, rng, m_prime, M)
        if isinstance(got, SteerResult):
            return got
        phase, last_reason = got
    return SteerFailure(phase=phase, attempts=cfg.retries, reason=last_reason)


def _steer_attempt(surf, p0, target, depth, rng, m_prime, M):
    p = target.p
    mod = p ** M
    chain: dict[int, tuple] = {}
    lifted = lift_point(surf, target, M)
    chain[depth] = lifted.coords
    t0 = eval_fibration(surf, 1, p0)

    if depth == 1:
        ok = _constrain_to_seed_fiber(surf, p0, target, M)
        if ok is None:
            return ("backward", "target class does not meet the seed fiber")
        chain[1] = ok
    else:
        for k in range(depth, 1, -1):
            i = expansion_fibration(k)
            par = _fibration_param_mod(surf, i, chain[k], p, M)
            if par is None or par[2] > 2:
                return ("backward", f"parameter of T{k} under pi_{i} lost precision")
            s, t, _ = par
            if k == 2:
                got = _intersection_point(surf, p0, t0, (s, t), p, M, rng)
                if got is None:
                    return ("backward",
                            "no simple p-adic point on (seed fiber) x (chain fiber)")
                chain[1] = got
            else:
                co6 = _pencil_coeffs_mod(surf, s, t, mod)
                pts = _conic_points_mod_p(tuple(c % p for c in co6), p)
                if not pts:
                    return ("backward", f"chain conic at depth {k} has no smooth mod-p points")
                rng.shuffle(pts)
                made = None
                for cand in pts:
                    v = _lift_conic_point(co6, cand, p, M)
                    if v is None:
                        continue
                    eps = 1 if i == 1 else -1
                    w = _w_lift_mod(surf, eps, s, t, v, p, M)
                    if w is None:
                        continue
                    cp = _canonical_padic((*v, w), p, M)
                    if cp is None:
                        continue
                    # prefer points whose own next parameter extracts cleanly
                    nxt = _fibration_param_mod(surf, expansion_fibration(k - 1),
                                               cp, p, M)
                    if nxt is None or nxt[2] > 2:
                        continue
                    made = cp
                    break
                if made is None:
                    return ("backward", f"could not lift a chain point at depth {k - 1}")
                chain[k - 1] = made

    # forward phase: replace each p-adic point by a rational one, fiber by fiber
    q_pt = p0
    nodes = [PropNode(point=p0, depth=0, parent=None, parameter=None,
                      height=p0.height())]
    for k in range(1, depth + 1):
        i = expansion_fibration(k)
        t_exact = eval_fibration(surf, i, q_pt)
        fib = fiber_at(surf, i, t_exact)
        if not fib.smooth:
            return ("forward", f"forward fiber at depth {k} is singular")
        base = primitive_tuple(q_pt.plane())
        piv = next((j for j, c in enumerate(base) if c % p != 0), None)
        if piv is None:
            return ("forward", f"forward base point at depth {k} has no p-unit coordinate")
        par = parametrize(fib.conic, base, pivot=piv)
        prm = _padic_parameter(par, chain[k], p, M)
        if prm is None:
            return ("forward", f"parameter extraction failed at depth {k}")
        a, b = _reconstruct_parameter(prm, p, m_prime)
        plane = par.point_at(a, b)
        q_pt = fib.lift_plane_point(plane)
        nodes.append(PropNode(point=q_pt, depth=k, parent=k - 1,
                              parameter=(a, b), height=q_pt.height()))
    got = reduce_surface_point(q_pt, p, target.m, surf)
    if got.coords == target.reduce(target.m).coords:
        return SteerResult(path=tuple(nodes), target=target,
                           verified_precision=target.m)
    return ("verify", "final congruence failed")


def _constrain_to_seed_fiber(surf, p0, target, M):
    """Lift the target class onto the exact pi_1 fiber of the seed (depth 1)."""
    p = target.p
    t0 = eval_fibration(surf, 1, p0)
    fib = fiber_at(surf, 1, t0)
    co6 = tuple(int(c) % p ** M if c.denominator == 1
                else int(c.numerator * _inv(c.denominator, p ** M)) % p ** M
                for c in fib.conic.coeffs)
    tm = p ** target.m
    x, y, z, w = target.coords
    if _conic_value_mod(co6, x, y, z, tm) % tm != 0:
        return None
    wl = _w_lift_mod(surf, fib.eps, t0[0] % p ** M, t0[1] % p ** M, (x, y, z), p, M)
    if wl is None or (wl - w) % tm != 0:
        return None
    v = _lift_conic_point(co6, (x % p, y % p, z % p), p, M)
    if v is None:
        return None
    # re-anchor to the target's residue beyond mod p when m > 1
    if target.m > 1:
        v = _lift_conic_point(co6, (x, y, z), p, M, start_m=target.m)
        if v is None:
            return None
    w_full = _w_lift_mod(surf, fib.eps, t0[0] % p ** M, t0[1] % p ** M, v, p, M)
    if w_full is None:
        return None
    return _canonical_padic((*v, w_full), p, M)


def _intersection_point(surf, p0, t0, st, p, M, rng):
    """A p-adic point on (pi_1 sheet over t0) meeting (pi_2 sheet over st):
    parametrize the seed fiber exactly and find a simple root of the other
    pencil member pulled back through it."""
    mod = p ** M
    s, t = st
    fib0 = fiber_at(surf, 1, t0)
    base = primitive_tuple(p0.plane())
    piv = next((j for j, c in enumerate(base) if c % p != 0), None)
    if piv is None:
        return None
    par0 = parametrize(fib0.conic, base, pivot=piv)
    co6 = _pencil_coeffs_mod(surf, s, t, mod)
    quartic = _compose_quartic_mod(co6, par0.forms, mod)
    roots = _simple_quartic_roots(quartic, p)
    if not roots:
        return None
    rng.shuffle(roots)
    for root in roots:
        a, b = _lift_quartic_root(quartic, root, p, M)
        vx = _eval_form_mod(par0.forms[0], a, b, mod)
        vy = _eval_form_mod(par0.forms[1], a, b, mod)
        vz = _eval_form_mod(par0.forms[2], a, b, mod)
        if vx % p == 0 and vy % p == 0 and vz % p == 0:
            continue
        v = (vx, vy, vz)
        w1 = _w_lift_mod(surf, 1, t0[0] % mod, t0[1] % mod, v, p, M)
        if w1 is None:
            continue
        w2 = _w_lift_mod(surf, -1, s, t, v, p, M)
        if w2 is None or (w1 - w2) % p ** max(1, M - 2) != 0:
            continue
        cp = _canonical_padic((*v, w1), p, M)
        if cp is not None:
            return cp
    return None


def _eval_form_mod(form, a: int, b: int, mod: int) -> int:
    c0, c1, c2 = (int(c) for c in form.coeffs)
    return (c0 * a * a + c1 * a * b + c2 * b * b) % mod


def _padic_parameter(par, coords, p: int, M: int):
    """Parameter [alpha : beta] mod p^M of a p-adic point with respect to an
    exact parametrization: solve v = gamma*base + alpha*e_i + beta*e_j."""
    mod = p ** M
    base = par.base
    i, j = par.comp
    piv = par.pivot
    x, y, z, _ = coords
    v = (x % mod, y % mod, z % mod)
    if base[piv] % p == 0:
        return None
    gamma = v[piv] * _inv(base[piv], mod) % mod
    alpha = (v[i] - gamma * base[i]) % mod
    beta = (v[j] - gamma * base[j]) % mod
    if alpha % p == 0 and beta % p == 0:
        va = valuation(alpha, p) if alpha else M
        vb = valuation(beta, p) if beta else M
        drop = min(va, vb)
        if drop >= M - 2:
            # the point coincides with the base to working precision: use the
            # exact tangent direction
            e_i = tuple(Fraction(int(m == i)) for m in range(3))
            e_j = tuple(Fraction(int(m == j)) for m in range(3))
            pb = tuple(Fraction(c) for c in base)
            ta = 2 * par.conic.bilinear(pb, e_j)
            tb = -2 * par.conic.bilinear(pb, e_i)
            den = ta.denominator * tb.denominator
            return (int(ta * den) % mod, int(tb * den) % mod, 0)
        return (alpha // p ** drop) % p ** (M - drop), \
               (beta // p ** drop) % p ** (M - drop), drop
    return (alpha, beta, 0)


def _reconstruct_parameter(prm, p: int, m_prime: int) -> tuple[int, int]:
    alpha, beta, _ = prm
    modp = p ** m_prime
    if beta % p != 0:
        c = alpha * _inv(beta, modp) % modp
        rec = rational_reconstruct(c, modp)
        if rec is not None:
            return primitive_tuple((rec[0], rec[1]))
        from .intmath import centered
        return primitive_tuple((centered(c, modp), 1))
    c = beta * _inv(alpha, modp) % modp
    rec = rational_reconstruct(c, modp)
    if rec is not None:
        return primitive_tuple((rec[1], rec[0]))
    from .intmath import centered
    return primitive_tuple((1, centered(c, modp)))


# --- coverage probe -------------------------------------------------------------


@dataclass(frozen=True)
class CoverageStats:
    prime: int
    precision: int
    depth: int
    total_smooth: int
    hits_per_depth: tuple        # cumulative hits for depths 1..depth
    missed: tuple                # smooth classes never reached at max depth
    seed: int

    def coverage(self) -> Fraction:
        if self.total_smooth == 0:
            return Fraction(0)
        return Fraction(self.hits_per_depth[-1], self.total_smooth)


def coverage_probe(surf: BiConicSurface, p0: SurfacePoint, p: int, m: int,
                   depth: int = 5, cfg: PropConfig | None = None) -> CoverageStats:
    """Steer to every smooth residue class mod p^m, recording the least chain
    depth that reaches each; hit counts are cumulative in depth."""
    cfg = cfg or PropConfig()
    if p == 2:
        raise BadPrime("p = 2 is excluded from probes")
    classes = smooth_classes(surf, p, m)
    if depth == 0:
        own = reduce_surface_point(p0, p, m, surf)
        hits = [1 if t.coords == own.coords else 0 for t in classes]
        return CoverageStats(prime=p, precision=m, depth=0,
                             total_smooth=len(classes), hits_per_depth=(),
                             missed=tuple(t for t, h in zip(classes, hits) if not h),
                             seed=cfg.seed)
    success_depth: dict[int, int | None] = {}
    for idx, cls in enumerate(classes):
        success_depth[idx] = None
        for d in range(1, depth + 1):
            res = steer_to_target(surf, p0, cls, depth=d, cfg=cfg)
            if isinstance(res, SteerResult):
                success_depth[idx] = d
                break
    hits = []
    for d in range(1, depth + 1):
        hits.append(sum(1 for v in success_depth.values() if v is not None and v <= d))
    missed = tuple(classes[i] for i, v in success_depth.items() if v is None)
    return CoverageStats(prime=p, precision=m, depth=depth,
                         total_smooth=len(classes), hits_per_depth=tuple(hits),
                         missed=missed, seed=cfg.seed)
