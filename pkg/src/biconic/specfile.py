"""Surface spec files: a flat key:value text format.

    id: paper-dp2
    q: 1, 2, 0, 0, 0, 0          # x^2, y^2, z^2, xy, xz, yz
    r1: 0, -2, 1, 0, 0, 0
    r2: 0, 2, 1, 0, 0, 0
    seed_point: 0, 1, 1, -1      # optional

Rationals are "a/b"; '#' starts a comment; unknown keys are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .conic import TernaryQuadraticForm
from .errors import ParseError
from .surface import BiConicSurface, SurfacePoint, build_surface

_KNOWN = {"id", "q", "r1", "r2", "seed_point"}


@dataclass(frozen=True)
class SurfaceSpec:
    fixture_id: str
    q: tuple
    r1: tuple
    r2: tuple
    seed_point: tuple | None

    def build(self) -> BiConicSurface:
        return build_surface(TernaryQuadraticForm(*self.q),
                             TernaryQuadraticForm(*self.r1),
                             TernaryQuadraticForm(*self.r2))

    def seed(self) -> SurfacePoint | None:
        if self.seed_point is None:
            return None
        return SurfacePoint(*self.seed_point)


def _parse_rationals(text: str, n: int, key: str, line: int) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise ParseError(f"field '{key}' needs {n} comma-separated values, "
                         f"got {len(parts)}", line)
    out = []
    for p in parts:
        try:
            out.append(Fraction(p))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"field '{key}': '{p}' is not a rational", line) from None
    return tuple(out)


def parse_spec(text: str) -> SurfaceSpec:
    seen: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", lineno)
        key, _, val = line.partition(":")
        key = key.strip()
        val = val.strip()
        if key not in _KNOWN:
            raise ParseError(f"unknown key '{key}'", lineno)
        if key in seen:
            raise ParseError(f"duplicate key '{key}'", lineno)
        if key == "id":
            if not val:
                raise ParseError("empty fixture id", lineno)
            seen[key] = val
        elif key in ("q", "r1", "r2"):
            seen[key] = _parse_rationals(val, 6, key, lineno)
        else:  # seed_point
            coords = _parse_rationals(val, 4, key, lineno)
            if any(c.denominator != 1 for c in coords):
                raise ParseError("seed_point coordinates must be integers", lineno)
            seen[key] = tuple(int(c) for c in coords)
    for key in ("id", "q", "r1", "r2"):
        if key not in seen:
            raise ParseError(f"missing required key '{key}'")
    return SurfaceSpec(fixture_id=seen["id"], q=seen["q"], r1=seen["r1"],
                       r2=seen["r2"], seed_point=seen.get("seed_point"))


def load_spec(path: str) -> SurfaceSpec:
    with open(path) as fh:
        return parse_spec(fh.read())
