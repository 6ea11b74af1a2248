"""Command-line interface: presets, config-driven sweeps, and validation.

Output directory resolution: --out flag, else the TPVSIM_OUT_DIR
environment variable, else the current directory.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

from ._version import __version__
from .config import ConfigError, load_config
from .presets import PRESETS
from .sweep import (SweepFailure, run_sweep, write_csv, write_metadata,
                    write_plot_data)


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("TPVSIM_OUT_DIR") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _apply_common(cfg, args):
    if getattr(args, "grid_points", None):
        cfg = dataclasses.replace(cfg, grid_points=args.grid_points)
    return cfg


def _execute(cfg, args, warnings=()):
    out = _out_dir(args)
    try:
        result = run_sweep(cfg, threads=args.threads)
    except SweepFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    base = out / cfg.name
    write_csv(result, f"{base}.csv")
    write_plot_data(result, f"{base}_grid.json")
    write_metadata(result, f"{base}_meta.json", warnings=warnings)
    print(f"{cfg.name}: {len(result.rows)} rows "
          f"({result.n_failed} failed) -> {base}.csv")
    if result.n_failed:
        for row in result.rows:
            if row["error"]:
                coords = {k: row[k] for k in result.axis_names}
                print(f"  failed at {coords}: {row['error']}", file=sys.stderr)
        return 1
    return 0


def cmd_preset(args) -> int:
    if args.name not in PRESETS:
        print(f"error: unknown preset {args.name!r}; available: "
              f"{', '.join(sorted(PRESETS))}", file=sys.stderr)
        return 2
    cfg = _apply_common(PRESETS[args.name](), args)
    return _execute(cfg, args)


def cmd_sweep(args) -> int:
    try:
        warnings, defaults, cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    cfg = _apply_common(cfg, args)
    return _execute(cfg, args, warnings=warnings)


def cmd_validate(args) -> int:
    try:
        warnings, defaults, cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 2
    for w in warnings:
        print(f"warning: {w}")
    print(f"valid: kind={cfg.kind} preset={cfg.cell_preset} "
          f"hash={cfg.digest()}")
    if defaults:
        print(f"defaults applied ({len(defaults)}):")
        for d in defaults:
            print(f"  {d}")
    return 0


def cmd_list_presets(args) -> int:
    for name in sorted(PRESETS):
        doc = (PRESETS[name].__doc__ or "").strip().splitlines()[0]
        print(f"{name}\t{doc}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tpvsim",
        description="Thermophotovoltaic system simulator: optics, cell, "
                    "storage, and cost sweeps.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="output directory (default: "
                        "TPVSIM_OUT_DIR or current directory)")
        sp.add_argument("--threads", type=int, default=1,
                        help="worker threads for sweep cells")
        sp.add_argument("--grid-points", type=int, dest="grid_points",
                        help="override wavelength grid resolution")

    sp = sub.add_parser("preset", help="run a built-in preset sweep")
    sp.add_argument("name")
    common(sp)
    sp.set_defaults(func=cmd_preset)

    sp = sub.add_parser("sweep", help="run a sweep from a JSON config")
    sp.add_argument("config")
    common(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("validate", help="validate a JSON config, no side effects")
    sp.add_argument("config")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("list-presets", help="list built-in presets")
    sp.set_defaults(func=cmd_list_presets)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
