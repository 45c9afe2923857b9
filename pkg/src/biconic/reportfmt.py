"""Canonical report rendering: a deterministic JSON-like text format.

Mappings render as ``key: value`` with keys sorted, nested blocks indented
by two spaces, list items introduced by ``-``.  All numbers are exact
(rationals as ``a/b``); no floating point appears in any artifact.
"""

from __future__ import annotations

import os
import tempfile
from fractions import Fraction

FORMAT_VERSION = 1


def fmt_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    if v is None:
        return "none"
    return str(v)


def _is_scalar(v) -> bool:
    return isinstance(v, (str, int, bool, Fraction)) or v is None


def render(value, indent: int = 0) -> list[str]:
    pad = " " * indent
    lines: list[str] = []
    if isinstance(value, dict):
        for key in sorted(value):
            v = value[key]
            if _is_scalar(v):
                lines.append(f"{pad}{key}: {fmt_scalar(v)}")
            elif isinstance(v, (list, tuple)) and not v:
                lines.append(f"{pad}{key}: []")
            elif isinstance(v, dict) and not v:
                lines.append(f"{pad}{key}: {{}}")
            else:
                lines.append(f"{pad}{key}:")
                lines.extend(render(v, indent + 2))
    elif isinstance(value, (list, tuple)):
        for item in value:
            if _is_scalar(item):
                lines.append(f"{pad}- {fmt_scalar(item)}")
            else:
                lines.append(f"{pad}-")
                lines.extend(render(item, indent + 2))
    else:
        lines.append(f"{pad}{fmt_scalar(value)}")
    return lines


def render_report(report: dict) -> str:
    return "\n".join(render(report)) + "\n"


def write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-report-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- serializers for domain objects -------------------------------------------


def ser_fraction_list(coeffs) -> str:
    return "[" + ", ".join(fmt_scalar(Fraction(c)) for c in coeffs) + "]"


def ser_nfelt(e) -> str:
    return ser_fraction_list(e.coeffs)


def ser_field(k) -> str:
    if k.is_rational_field():
        return "Q"
    return "Q[u]/" + ser_fraction_list(k.modulus)


def ser_surface_point(p) -> str:
    return f"[{p.x}:{p.y}:{p.z}:{p.w}]"


def ser_param(t) -> str:
    return f"[{t[0]}:{t[1]}]"


def ser_closed_point(p) -> object:
    if p.is_rational():
        return ser_surface_point(p.to_surface_point())
    return {
        "field": ser_field(p.field),
        "coords": [ser_nfelt(c) for c in p.coords],
    }


def ser_binary_form(f) -> str:
    return ser_fraction_list(f.coeffs)


def ser_factorization(factors) -> list:
    out = []
    for fac, mult in factors:
        if fac == ():
            out.append({"root": "[1:0]", "multiplicity": mult})
        else:
            out.append({"poly": ser_fraction_list(fac), "multiplicity": mult})
    return out
