"""Command-line driver: analyze | generate | steer | probe | certify.

Every run writes deterministic artifacts (reruns with identical configs are
byte-identical) and prints the rendered report; exit codes are 0 (ok),
2 (parse error), 3 (domain error), 4 (probe below threshold).
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from fractions import Fraction

from .conic import classify_form
from .errors import BiconicError, ParseError
from .localpoints import (ResidueTarget, is_smooth_residue, reduce_surface_point)
from .numberfield import QQ
from .propagate import (CoverageStats, PropConfig, SteerFailure, SteerResult,
                        coverage_probe, generate_points, good_primes,
                        steer_to_target)
from .reportfmt import (FORMAT_VERSION, fmt_scalar, render_report,
                        ser_binary_form, ser_closed_point, ser_factorization,
                        ser_field, ser_fraction_list, ser_nfelt, ser_param,
                        ser_surface_point, write_atomic)
from .specfile import load_spec
from .surface import (Certificate, NoCertificate, check_hypotheses, check_smooth,
                      discriminant_sextic, obstruction_certificate,
                      singular_fiber_table, SurfacePoint, _factor_binary)


def _fixture_section(spec) -> dict:
    return {
        "id": spec.fixture_id,
        "q": ser_fraction_list(spec.q),
        "r1": ser_fraction_list(spec.r1),
        "r2": ser_fraction_list(spec.r2),
        "seed_point": (ser_surface_point(spec.seed()) if spec.seed_point else None),
    }


def _config_section(args, command: str, extra: dict | None = None) -> dict:
    out = {"command": command, "fixture": args.fixture, "out": args.out,
           "format_version": FORMAT_VERSION}
    if extra:
        out.update(extra)
    return out


def _fiber_entry(rep) -> dict:
    entry = {
        "parameter": rep.parameter.label(),
        "parameter_field": ser_field(rep.parameter.field),
        "multiplicity": rep.multiplicity,
        "rank": rep.rank,
        "classification": rep.classification,
    }
    if rep.rank == 2:
        entry["node_lift"] = ser_closed_point(rep.node_lift)
        entry["split"] = rep.split
        if rep.splitting_label is not None:
            entry["splitting_field"] = rep.splitting_label
        else:
            entry["splitting_disc"] = ser_nfelt(rep.splitting_disc)
    else:
        entry["repeated_line"] = "[" + ", ".join(
            ser_nfelt(c) for c in rep.repeated_line) + "]"
    return entry


def _certificate_entry(cert: Certificate) -> dict:
    return {
        "point": ser_surface_point(cert.point),
        "t1": ser_param(cert.t1),
        "t2": ser_param(cert.t2),
        "L1": cert.L1_label,
        "L2": cert.L2_label,
        "verdict": cert.verdict,
    }


def cmd_analyze(args) -> tuple[int, str]:
    spec = load_spec(args.fixture)
    surf = spec.build()
    smooth = check_smooth(surf)
    disc = discriminant_sextic(surf)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        hyp = check_hypotheses(surf, seed=args.seed)
        tables = {i: singular_fiber_table(surf, i) for i in (1, 2)}
    report = {
        "config": _config_section(args, "analyze", {"seed": args.seed}),
        "fixture": _fixture_section(spec),
        "smoothness": {
            "smooth": smooth.smooth,
            "isolated": smooth.isolated,
            "singular_points": [ser_closed_point(p) for p in smooth.singular_points],
        },
        "discriminant": {
            "form": ser_binary_form(disc),
            "degree": disc.degree,
            "factors": ser_factorization(_factor_binary(disc)),
        },
        "fibrations": {
            "pi_1": {"singular_fibers": [_fiber_entry(r) for r in tables[1]]},
            "pi_2": {"singular_fibers": [_fiber_entry(r) for r in tables[2]]},
        },
        "bad_locus": {
            "pi_1": [ser_closed_point(p) for p in hyp.bad1],
            "pi_2": [ser_closed_point(p) for p in hyp.bad2],
            "intersection": [ser_closed_point(p) for p in hyp.witnesses],
        },
        "hypotheses": {
            "condition (a)": (f"HOLDS ({hyp.intersection_number})"
                              if hyp.condition_a
                              else f"FAILS ({hyp.intersection_number})"),
            "condition (b)": "HOLDS" if hyp.condition_b else "VIOLATED",
            "intersection_samples": [
                {"pair": f"{ser_param(p1)} x {ser_param(p2)}", "number": n}
                for p1, p2, n in hyp.samples],
            "witnesses": [ser_closed_point(p) for p in hyp.witnesses],
            "eckardt_counts": list(hyp.eckardt_counts),
        },
        "certificates": [_certificate_entry(c) for c in hyp.certificates],
    }
    return 0, render_report(report)


def _require_seed(spec):
    p0 = spec.seed()
    if p0 is None:
        raise BiconicError(f"fixture '{spec.fixture_id}' carries no seed point")
    return p0


def cmd_generate(args) -> tuple[int, str]:
    spec = load_spec(args.fixture)
    surf = spec.build()
    p0 = _require_seed(spec)
    cfg = PropConfig(max_depth=args.depth, branching=args.branch,
                     param_height=args.height, seed=args.seed,
                     retries=args.retries)
    res = generate_points(surf, p0, cfg)
    rows = sorted((n.depth, n.height, n.point.coords()) for n in res.nodes)
    tsv = ["x\ty\tz\tw\tdepth\theight"]
    for depth, height, (x, y, z, w) in rows:
        tsv.append(f"{x}\t{y}\t{z}\t{w}\t{depth}\t{height}")
    tsv_text = "\n".join(tsv) + "\n"
    tsv_path = os.path.join(args.out, f"{spec.fixture_id}.points.tsv")
    write_atomic(tsv_path, tsv_text)
    report = {
        "config": _config_section(args, "generate", {
            "depth": args.depth, "branch": args.branch, "height": args.height,
            "seed": args.seed, "retries": args.retries}),
        "fixture": _fixture_section(spec),
        "points_file": tsv_path,
        "stats": {
            "total_points": len(res.nodes),
            "per_depth_new": list(res.stats.per_depth_new),
            "depth2_pi1_parameters": res.stats.depth2_pi1_params,
            "depth2_pi2_parameters": res.stats.depth2_pi2_params,
            "dead_ends": res.stats.dead_ends,
        },
    }
    return 0, render_report(report)


def _parse_point_arg(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(v.strip()) for v in text.split(","))
    except ValueError:
        raise ParseError(f"expected integers 'x,y,z,w', got {text!r}") from None
    if len(parts) != 4:
        raise ParseError("point needs exactly four coordinates")
    return parts


def _resolve_target(surf, p0, args) -> ResidueTarget:
    p, m = args.prime, args.precision
    if args.target is None:
        return reduce_surface_point(p0, p, m, surf)
    coords = _parse_point_arg(args.target)
    mod = p ** m
    coords = tuple(c % mod for c in coords)
    from .localpoints import _f4_mod
    if (coords[3] ** 2 - _f4_mod(surf, coords[0], coords[1], coords[2], mod)) % mod:
        raise BiconicError("target does not satisfy the surface equation mod p^m")
    t = ResidueTarget(p, m, coords, is_smooth_residue(surf, p, coords))
    t.chart()  # raises when no unit plane coordinate exists
    return t


def cmd_steer(args) -> tuple[int, str]:
    spec = load_spec(args.fixture)
    surf = spec.build()
    p0 = _require_seed(spec)
    target = _resolve_target(surf, p0, args)
    cfg = PropConfig(max_depth=args.depth, branching=args.branch,
                     param_height=args.height, seed=args.seed,
                     retries=args.retries, target=target)
    res = steer_to_target(surf, p0, target, depth=args.depth, cfg=cfg)
    report = {
        "config": _config_section(args, "steer", {
            "depth": args.depth, "prime": args.prime, "precision": args.precision,
            "seed": args.seed, "retries": args.retries,
            "target": target.serialize()}),
        "fixture": _fixture_section(spec),
    }
    if isinstance(res, SteerResult):
        report["result"] = "success"
        report["path"] = [
            {"depth": n.depth, "point": ser_surface_point(n.point),
             "parameter": (ser_param(n.parameter) if n.parameter else None),
             "height": n.height}
            for n in res.path]
        report["verification"] = {
            "congruence": "verified exactly",
            "precision": res.verified_precision,
            "final_class": reduce_surface_point(res.path[-1].point, target.p,
                                                target.m, surf).serialize(),
        }
    else:
        report["result"] = "failure"
        report["failure"] = {"phase": res.phase, "attempts": res.attempts,
                             "reason": res.reason}
    return 0, render_report(report)


def cmd_probe(args) -> tuple[int, str]:
    spec = load_spec(args.fixture)
    surf = spec.build()
    p0 = _require_seed(spec)
    if args.primes:
        primes = [int(p.strip()) for p in args.primes.split(",")]
    else:
        primes = good_primes(surf, p0, count=3)
    cfg = PropConfig(max_depth=args.depth, branching=args.branch,
                     param_height=args.height, seed=args.seed,
                     retries=args.retries)
    tables = []
    below = False
    for p in primes:
        stats = coverage_probe(surf, p0, p, args.precision, depth=args.depth, cfg=cfg)
        cov = stats.coverage()
        entry = {
            "prime": p,
            "precision": stats.precision,
            "total_smooth_classes": stats.total_smooth,
            "hits_per_depth": list(stats.hits_per_depth),
            "coverage": fmt_scalar(cov),
            "missed": [t.serialize() for t in stats.missed],
        }
        if args.threshold is not None and cov * 100 < args.threshold:
            below = True
            entry["below_threshold"] = True
        tables.append(entry)
    report = {
        "config": _config_section(args, "probe", {
            "depth": args.depth, "precision": args.precision,
            "primes": ",".join(str(p) for p in primes),
            "seed": args.seed, "retries": args.retries,
            "threshold": (args.threshold if args.threshold is not None else "off")}),
        "fixture": _fixture_section(spec),
        "coverage": tables,
    }
    return (4 if below else 0), render_report(report)


def cmd_certify(args) -> tuple[int, str]:
    spec = load_spec(args.fixture)
    surf = spec.build()
    coords = _parse_point_arg(args.point)
    pt = SurfacePoint(*coords)
    got = obstruction_certificate(surf, pt)
    report = {
        "config": _config_section(args, "certify", {"point": args.point}),
        "fixture": _fixture_section(spec),
    }
    if isinstance(got, Certificate):
        report["certificate"] = _certificate_entry(got)
    else:
        report["certificate"] = None
        report["failed_condition"] = got.failed_condition
    return 0, render_report(report)


_COMMANDS = {
    "analyze": cmd_analyze,
    "generate": cmd_generate,
    "steer": cmd_steer,
    "probe": cmd_probe,
    "certify": cmd_certify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="biconic",
        description="Exact analysis and point propagation for bi-conic surfaces")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--fixture", required=True, help="surface spec file")
        sp.add_argument("--out", default="out", help="artifact directory")
        sp.add_argument("--depth", type=int, default=5)
        sp.add_argument("--branch", type=int, default=8)
        sp.add_argument("--height", type=int, default=10,
                        help="parameter height bound")
        sp.add_argument("--primes", default=None,
                        help="comma-separated primes (probe)")
        sp.add_argument("--prime", type=int, default=11, help="steering prime")
        sp.add_argument("--precision", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--retries", type=int, default=20)
        sp.add_argument("--threshold", type=int, default=None,
                        help="probe coverage threshold in percent (off by default)")
        sp.add_argument("--target", default=None,
                        help="steering target 'x,y,z,w' mod p^m (default: seed class)")
        sp.add_argument("--point", default=None, help="surface point 'x,y,z,w'")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "certify" and args.point is None:
        print("certify requires --point x,y,z,w", file=sys.stderr)
        return 2
    try:
        code, text = _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except BiconicError as exc:
        print(f"domain error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(text)
    spec_id = None
    try:
        spec_id = load_spec(args.fixture).fixture_id
    except Exception:
        pass
    if spec_id is not None:
        write_atomic(os.path.join(args.out, f"{spec_id}.{args.command}.txt"), text)
    return code


if __name__ == "__main__":
    sys.exit(main())
