"""Flat-file formats: square CSV/JSON triples, report CSV, summary JSON.

CSV uses '.' decimals, comma separators, a header row and 17-significant-digit
floats so reruns are byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

from .dyadic import DyadicSquare
from .estimates import SweepReport
from .fractals import FractalSpec
from .stepfn import StepFunction


def fmt(x: float) -> str:
    return f"{float(x):.17g}"


def write_squares_csv(path, squares) -> None:
    lines = ["level,ix,iy"]
    lines += [f"{q.level},{q.ix},{q.iy}" for q in squares]
    Path(path).write_text("\n".join(lines) + "\n")


def read_squares_csv(path) -> list[DyadicSquare]:
    lines = Path(path).read_text().strip().splitlines()
    if not lines or lines[0] != "level,ix,iy":
        raise ValueError(f"{path}: expected header 'level,ix,iy'")
    out = []
    for line in lines[1:]:
        level, ix, iy = (int(tok) for tok in line.split(","))
        out.append(DyadicSquare(level, ix, iy))
    return out


def squares_to_json(squares) -> list[list[int]]:
    return [[q.level, q.ix, q.iy] for q in squares]


def squares_from_json(triples) -> list[DyadicSquare]:
    return [DyadicSquare(int(lv), int(ix), int(iy)) for lv, ix, iy in triples]


def write_step_csv(path, fn: StepFunction) -> None:
    lines = ["breakpoint,value"]
    bp, vals = fn.breakpoints, fn.values
    for i in range(bp.size):
        v = vals[i] if i < vals.size else 0.0
        lines.append(f"{fmt(bp[i])},{fmt(v)}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_sweep_csv(path, report: SweepReport) -> None:
    lines = ["theta,m_proj,int_f,int_f2,cs_lower"]
    for i in range(len(report.theta)):
        lines.append(
            ",".join(
                fmt(col[i])
                for col in (report.theta, report.m_proj, report.int_f, report.int_f2, report.cs_lower)
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def fractal_spec_to_json(spec: FractalSpec) -> dict:
    return {"name": spec.name, "base": spec.base, "digits": [list(d) for d in spec.digits]}


def fractal_spec_from_json(obj: dict) -> FractalSpec:
    try:
        base = int(obj["base"])
        digits = tuple((int(dx), int(dy)) for dx, dy in obj["digits"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad fractal spec: {exc}") from exc
    return FractalSpec(base=base, digits=digits, name=str(obj.get("name", "")))


def load_fractal_spec(path) -> FractalSpec:
    return fractal_spec_from_json(json.loads(Path(path).read_text()))
