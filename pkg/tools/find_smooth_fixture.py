"""Search for the shipped smooth fixture.

Samples (q, r1, r2) with coefficients in [-3, 3] from a fixed seeded stream
and keeps the first surface that passes every gate:

  - valid surface with a squarefree discriminant sextic (six distinct
    singular parameters over the closure);
  - smooth branch quartic;
  - a rational point of height <= 3 lying on smooth fibers of both
    fibrations;
  - disjoint bad loci (condition (b) of the main hypothesis set);
  - at least three odd good primes below 30;
  - depth-5 residue coverage >= 95% at the three smallest good primes.

Run:  python tools/find_smooth_fixture.py [seed]
"""

import random
import sys
import time
import warnings

sys.path.insert(0, "src")

from biconic.conic import TernaryQuadraticForm
from biconic.errors import BiconicError, DegenerateData
from biconic.polys import pdeg, pgcd, pstrip
from biconic.propagate import PropConfig, coverage_probe, good_primes
from biconic.surface import (BiConicSurface, bad_locus_intersection, check_smooth,
                             eval_fibration, fiber_at, search_points)

SEED = int(sys.argv[1]) if len(sys.argv) > 1 else 0


def disc_squarefree(surf) -> bool:
    disc = surf.disc
    if disc.t_multiplicity() > 1:
        return False
    dense = disc.dense_s()
    der = pstrip([dense[i] * i for i in range(1, len(dense))])
    if not der:
        return False
    return pdeg(pgcd(dense, der)) == 0


def main():
    rng = random.Random(f"smooth-fixture-search:{SEED}")
    start = time.time()
    tried = 0
    while True:
        tried += 1
        co = [rng.randint(-3, 3) for _ in range(18)]
        q = TernaryQuadraticForm(*co[0:6])
        r1 = TernaryQuadraticForm(*co[6:12])
        r2 = TernaryQuadraticForm(*co[12:18])
        try:
            surf = BiConicSurface(q, r1, r2)
        except DegenerateData:
            continue
        if not disc_squarefree(surf):
            continue
        if not check_smooth(surf).smooth:
            continue
        pts = search_points(surf, 3)
        seed_pt = None
        for pt in pts:
            try:
                f1 = fiber_at(surf, 1, eval_fibration(surf, 1, pt))
                f2 = fiber_at(surf, 2, eval_fibration(surf, 2, pt))
            except BiconicError:
                continue
            if f1.smooth and f2.smooth:
                seed_pt = pt
                break
        if seed_pt is None:
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if bad_locus_intersection(surf):
                continue
        primes = good_primes(surf, seed_pt, count=3, limit=30)
        if len(primes) < 3:
            continue
        print(f"[{tried} tries, {time.time()-start:.0f}s] candidate "
              f"q={co[0:6]} r1={co[6:12]} r2={co[12:18]} seed={seed_pt} primes={primes}")
        covs = []
        for p in primes:
            stats = coverage_probe(surf, seed_pt, p, 1, depth=5,
                                   cfg=PropConfig(seed=0, retries=12))
            cov = stats.coverage()
            covs.append((p, float(cov), stats.total_smooth))
            print(f"   p={p}: {stats.hits_per_depth} of {stats.total_smooth} "
                  f"-> {float(cov):.3f}")
            if cov < 0.95:
                break
        if all(c >= 0.95 for _, c, _ in covs) and len(covs) == 3:
            print("FOUND:")
            print("q :", co[0:6])
            print("r1:", co[6:12])
            print("r2:", co[12:18])
            print("seed point:", seed_pt.coords())
            print("good primes:", primes)
            return


if __name__ == "__main__":
    main()
