"""Command line entry point: ``fdxsim run --config sim.cfg --out raw.csv``.

The config file holds flat ``key = value`` lines whose keys are
:class:`~fdxsim.harness.SimConfig` field names. Sequence-valued keys take
comma-separated values, e.g. ``snr_grid_db = -10, 0, 10`` or
``desired_rays = 1, 10``.
"""

from __future__ import annotations

import argparse
import configparser
import dataclasses
import logging
import sys

import numpy as np

from .errors import ConfigError
from .harness import SimConfig, run_sweep, summarize, write_raw_csv, write_summary_csv

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2

_SECTION = "sim"


def _parse_value(name: str, raw: str, default):
    try:
        if isinstance(default, tuple):
            kind = type(default[0]) if default else float
            parts = [p.strip() for p in raw.split(",") if p.strip()]
            return tuple(kind(float(p)) if kind is int and float(p).is_integer() else kind(p) for p in parts)
        if isinstance(default, bool):
            return raw.strip().lower() in ("1", "true", "yes", "on")
        if isinstance(default, int):
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {name!r}: {raw!r}") from exc


def parse_config_text(text: str, base: SimConfig | None = None) -> SimConfig:
    """Build a SimConfig from flat ``key = value`` text; unknown keys are an error."""
    base = base or SimConfig()
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(f"[{_SECTION}]\n{text}")
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    defaults = dataclasses.asdict(base)
    updates = {}
    for key, raw in parser.items(_SECTION):
        if key not in defaults:
            raise ConfigError(f"unknown config key {key!r}")
        updates[key] = _parse_value(key, raw, defaults[key])
    return dataclasses.replace(base, **updates)


def load_config(path: str) -> SimConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fdxsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a Monte Carlo sweep and write CSV")
    run.add_argument("--config", help="flat key = value file of SimConfig fields")
    run.add_argument("--snr-db", help="comma list overriding snr_grid_db")
    run.add_argument("--bits", help="comma list overriding asic_bits")
    run.add_argument("--trials", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--out", help="raw per-trial CSV (default: stdout)")
    run.add_argument("--summary", help="per-(snr, bits) summary CSV")
    run.add_argument("--threads", type=int, default=1)
    run.add_argument("-v", "--verbose", action="store_true")
    return parser


def _resolve_config(args) -> SimConfig:
    cfg = load_config(args.config) if args.config else SimConfig()
    overrides = {}
    if args.snr_db is not None:
        overrides["snr_grid_db"] = _parse_value("snr_db", args.snr_db, cfg.snr_grid_db)
    if args.bits is not None:
        overrides["asic_bits"] = _parse_value("bits", args.bits, cfg.asic_bits)
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.threads < 1:
        raise ConfigError("--threads must be >= 1")
    try:
        return dataclasses.replace(cfg, **overrides)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _resolve_config(args)
    except (ConfigError, ValueError) as exc:
        print(f"fdxsim: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        result = run_sweep(cfg, threads=args.threads)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                write_raw_csv(result, fh)
        else:
            write_raw_csv(result, sys.stdout)
        if args.summary:
            with open(args.summary, "w", encoding="utf-8", newline="") as fh:
                write_summary_csv(summarize(result.rows), fh)
    except (ArithmeticError, np.linalg.LinAlgError, OSError) as exc:
        print(f"fdxsim: runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
