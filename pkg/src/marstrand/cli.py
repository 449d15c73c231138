"""Command-line front end.

Verbs: ``gen`` (discretize a digit set), ``cover`` (build good covers),
``marstrand`` (angle sweeps and energy bounds), ``density`` (push-forward
densities and mollified-norm ratios).  Each verb writes CSV/JSON (and SVG for
sweeps) under the output directory and updates its own section of
``summary.json``.  Outputs are deterministic for a given config and seed.

Exit codes: 0 success, 2 configuration error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import io
from .covers import build_good_cover, goodness_bound, goodness_constant
from .density import domination_ratio, pushforward_density
from .estimates import (
    CapExceeded,
    ThetaGrid,
    energy_transversal_bound,
    energy_pair_bound,
    good_angle_sets,
    shell_masses,
    sweep,
)
from .fractals import (
    FractalSpec,
    hausdorff_sum,
    regularity_scan,
    similarity_dimension,
    squares_at_depth,
)
from .svg import line_chart

#: Radii probed by the gen-time regularity diagnostic: 2**(-k/8) down to 1/32.
_SCAN_RADII = [2.0 ** (-k / 8) for k in range(41)]
_SCAN_SAMPLES = 300


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    spec: FractalSpec
    depths: tuple[int, int]
    s: float
    tau: float
    grid: int
    eps: list[float] | None
    angle_eps: float | None
    out: Path
    seed: int

    def depth_range(self) -> range:
        return range(self.depths[0], self.depths[1] + 1)


def _parse_depths(value) -> tuple[int, int]:
    if isinstance(value, str):
        parts = value.split("..")
        if len(parts) != 2:
            raise ConfigError(f"depths must look like 'a..b', got {value!r}")
        lo, hi = (int(p) for p in parts)
    elif isinstance(value, (list, tuple)) and len(value) == 2:
        lo, hi = int(value[0]), int(value[1])
    elif isinstance(value, int):
        lo = hi = value
    else:
        raise ConfigError(f"bad depths {value!r}")
    if lo < 1 or hi < lo:
        raise ConfigError(f"need 1 <= a <= b in depths, got {lo}..{hi}")
    return lo, hi


def load_config(path: str, args: argparse.Namespace) -> RunConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc

    spec_obj = raw.get("spec")
    if isinstance(spec_obj, str):
        spec_path = Path(spec_obj)
        if not spec_path.is_absolute():
            spec_path = Path(path).parent / spec_path
        try:
            spec_obj = json.loads(spec_path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read spec {spec_path}: {exc}") from exc
    if not isinstance(spec_obj, dict):
        raise ConfigError("config needs a 'spec' object or path")
    try:
        spec = io.fractal_spec_from_json(spec_obj)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    depths = _parse_depths(args.depths if args.depths else raw.get("depths", [1, 3]))
    s = raw.get("s")
    s = similarity_dimension(spec) if s is None else float(s)
    tau = float(args.tau if args.tau is not None else raw.get("tau", 1.0))
    grid = int(args.grid if args.grid is not None else raw.get("grid", 256))
    eps_raw = raw.get("eps")
    eps = [float(e) for e in eps_raw] if eps_raw else None
    angle_eps = raw.get("angle_eps")
    angle_eps = None if angle_eps is None else float(angle_eps)
    out = Path(args.out if args.out else raw.get("out", "out"))
    seed = int(args.seed if args.seed is not None else raw.get("seed", 0))
    if tau <= 0:
        raise ConfigError("tau must be positive")
    if grid < 16:
        raise ConfigError("grid must be at least 16")
    if eps is not None and any(e <= 0 for e in eps):
        raise ConfigError("eps values must be positive")
    return RunConfig(spec, depths, s, tau, grid, eps, angle_eps, out, seed)


def _update_summary(out: Path, section: str, payload) -> None:
    path = out / "summary.json"
    summary = {}
    if path.exists():
        summary = json.loads(path.read_text())
    summary[section] = payload
    io.write_json(path, summary)


def cmd_gen(cfg: RunConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    sets = []
    for depth in cfg.depth_range():
        ds = squares_at_depth(cfg.spec, depth)
        io.write_squares_csv(cfg.out / f"set_{depth}.csv", ds.squares)
        sets.append(
            {
                "depth": depth,
                "count": len(ds.squares),
                "hausdorff_sum": hausdorff_sum(ds, cfg.s),
                "regularity_constant": regularity_scan(
                    ds, cfg.s, _SCAN_RADII, _SCAN_SAMPLES, seed=cfg.seed
                ),
            }
        )
    _update_summary(
        cfg.out,
        "gen",
        {"name": cfg.spec.name, "base": cfg.spec.base, "s": cfg.s, "seed": cfg.seed, "sets": sets},
    )
    return 0


def cmd_cover(cfg: RunConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    rows = []
    for depth in cfg.depth_range():
        ds = squares_at_depth(cfg.spec, depth)
        cover = build_good_cover(ds, cfg.s, cfg.tau)
        io.write_squares_csv(cfg.out / f"cover_{depth}.csv", cover.squares)
        info = {
            "s": cfg.s,
            "tau": cfg.tau,
            "goodness_constant": goodness_constant(cover),
            "goodness_bound": goodness_bound(cfg.s, cfg.tau),
            "hausdorff_sum": cover.mass(),
            "count": len(cover.squares),
        }
        io.write_json(cfg.out / f"cover_{depth}.json", info)
        rows.append({"depth": depth, **info})
    _update_summary(cfg.out, "cover", {"name": cfg.spec.name, "covers": rows})
    return 0


def cmd_marstrand(cfg: RunConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    grid = ThetaGrid(cfg.grid)
    covers = []
    reports = []
    rows = []
    for depth in cfg.depth_range():
        ds = squares_at_depth(cfg.spec, depth)
        cover = build_good_cover(ds, cfg.s, cfg.tau)
        report = sweep(cover, grid)
        covers.append(cover)
        reports.append(report)
        io.write_sweep_csv(cfg.out / f"sweep_{depth}.csv", report)
        line_chart(
            cfg.out / f"plot_{depth}.svg",
            report.theta,
            [("m_proj", report.m_proj), ("cs_lower", report.cs_lower)],
            title=f"{cfg.spec.name or 'set'} depth {depth} (s={cfg.s:.4g})",
            xlabel="theta",
            ylabel="measure",
        )
        quad = report.energy_quadrature()
        pair = energy_pair_bound(cover)
        trans = energy_transversal_bound(cover)
        anchor = cover.squares[0]
        shells = shell_masses(cover, anchor)
        rows.append(
            {
                "depth": depth,
                "count": len(cover.squares),
                "energy_quadrature": quad,
                "energy_pair_bound": pair,
                "energy_transversal_capped": trans.capped,
                "energy_transversal_literal": trans.literal,
                "goodness_constant": goodness_constant(cover),
                "hausdorff_sum": cover.mass(),
                "shells": [
                    {"j": sh.j, "mass": sh.mass, "normalized": sh.normalized} for sh in shells
                ],
            }
        )
    angle_eps = cfg.angle_eps
    if angle_eps is None:
        # Markov-style default: half the grid must beat twice the mean energy
        angle_eps = math.pi / (2.0 * rows[0]["energy_quadrature"])
    good = good_angle_sets(covers, grid, angle_eps, reports=reports)
    _update_summary(
        cfg.out,
        "marstrand",
        {
            "name": cfg.spec.name,
            "s": cfg.s,
            "tau": cfg.tau,
            "grid": cfg.grid,
            "angle_eps": angle_eps,
            "good_angle_fraction": [good.fraction(i) for i in range(len(covers))],
            "good_angle_limit_fraction": good.fraction(),
            "depths": rows,
        },
    )
    return 0


def cmd_density(cfg: RunConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    grid = ThetaGrid(cfg.grid)
    rows = []
    for depth in cfg.depth_range():
        ds = squares_at_depth(cfg.spec, depth)
        cover = build_good_cover(ds, cfg.s, cfg.tau)
        diameter = cover.diameter()
        eps_list = cfg.eps if cfg.eps else [2.0 * diameter, 4.0 * diameter]
        lines = ["theta,breakpoint,value"]
        for theta in grid.nodes:
            d = pushforward_density(cover, theta)
            bp, vals = d.fn.breakpoints, d.fn.values
            for i in range(bp.size):
                v = vals[i] if i < vals.size else 0.0
                lines.append(f"{io.fmt(theta)},{io.fmt(bp[i])},{io.fmt(v)}")
            for eps in eps_list:
                if eps < diameter:
                    print(
                        f"warning: eps {eps} below cover diameter {diameter} "
                        f"at depth {depth}; skipped",
                        file=sys.stderr,
                    )
                    rows.append(
                        {"depth": depth, "theta": float(theta), "eps": eps, "skipped": True}
                    )
                    continue
                rows.append(
                    {
                        "depth": depth,
                        "theta": float(theta),
                        "eps": eps,
                        "ratio": domination_ratio(cover, theta, eps),
                        "mass": d.mass,
                    }
                )
        (cfg.out / f"density_{depth}.csv").write_text("\n".join(lines) + "\n")
    _update_summary(cfg.out, "density", {"name": cfg.spec.name, "s": cfg.s, "rows": rows})
    return 0


_COMMANDS = {"gen": cmd_gen, "cover": cmd_cover, "marstrand": cmd_marstrand, "density": cmd_density}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="marstrand",
        description="Dyadic-cover projection analysis of digit-defined fractal sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("gen", "discretize the digit set at each depth"),
        ("cover", "build good dyadic covers"),
        ("marstrand", "angle sweeps, energy bounds, good-angle sets"),
        ("density", "push-forward densities and mollified-norm ratios"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--out", help="output directory (overrides config)")
        p.add_argument("--depths", help="depth range a..b (overrides config)")
        p.add_argument("--grid", type=int, help="theta grid size M (overrides config)")
        p.add_argument("--tau", type=float, help="merge threshold (overrides config)")
        p.add_argument("--seed", type=int, help="seed for randomized diagnostics")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
