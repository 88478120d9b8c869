"""Command-line entry point: run a sweep and write it as CSV."""
from __future__ import annotations

import argparse
import csv
import sys
from typing import Iterable, Optional, TextIO

from .config import load_config
from .errors import ConfigError, ModelError
from .scenario import ATTENUATION_MODES, EXPERIMENTS, SweepRow, configure, run_sweep

CSV_HEADER = (
    "iteration,weather,angle_deg,ground_distance_m,altitude_m,gamma_db_km,"
    "path_loss_db,weather_excess_db,sinr,spectral_eff_bps_hz,ee_bits_per_joule,"
    "coverage_radius_m"
)


def _fmt(x: float) -> str:
    # repr is the shortest string that round-trips to the same float
    return repr(float(x))


def write_csv(rows: Iterable[SweepRow], sink: TextIO) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    sink.write(CSV_HEADER + "\n")
    for r in rows:
        writer.writerow([
            r.iteration,
            r.weather,
            _fmt(r.angle_deg),
            _fmt(r.ground_distance_m),
            _fmt(r.altitude_m),
            _fmt(r.gamma_db_km),
            _fmt(r.path_loss_db),
            _fmt(r.weather_excess_db),
            _fmt(r.sinr_linear),
            _fmt(r.spectral_eff),
            _fmt(r.ee_bits_per_joule),
            "" if r.coverage_radius_m is None else _fmt(r.coverage_radius_m),
        ])


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="uavlink", description="Weather-aware UAV-to-ground link sweeps.")
    p.add_argument("--config", required=True, metavar="PATH", help="sweep configuration file")
    p.add_argument("--experiment", choices=EXPERIMENTS, default=None,
                   help="sweep to run (default: the config's [sweep] experiment, else grid)")
    p.add_argument("--out", default="-", metavar="PATH", help="CSV output path, '-' for stdout")
    p.add_argument("--seed", type=int, default=None, help="override the master seed")
    p.add_argument("--mode", choices=ATTENUATION_MODES, default="parametric",
                   help="weather attenuation source (default: parametric)")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for the sweep")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = configure(load_config(args.config), args.experiment, args.mode, args.seed)
    except (ConfigError, ModelError) as exc:
        print(f"uavlink: config error: {exc}", file=sys.stderr)
        return 1

    try:
        rows = run_sweep(cfg, workers=args.jobs)
    except ModelError as exc:
        print(f"uavlink: model error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.out == "-":
            write_csv(rows, sys.stdout)
            sys.stdout.flush()
        else:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                write_csv(rows, fh)
    except OSError as exc:
        print(f"uavlink: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
