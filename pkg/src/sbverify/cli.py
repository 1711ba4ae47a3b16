"""Command-line entry point: one subcommand per verification plus ``verify-all``."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .config_model import ModelParams, ParamsError, full_configuration_report, load_params
from .divisor import obstruction_report
from .lattice import blowup_lattice_report
from .report import CertReport, combine, write_report
from .seifert import InvariantError, SizeError, seifert_report, sw_contradiction_check

WORKERS_ENV = "SBVERIFY_WORKERS"
SUBCOMMANDS = ("verify-lattice", "verify-config", "verify-obstruction", "seifert", "sw-check", "verify-all")

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    report_path: str = "-"
    params_path: str | None = None
    seed: int = 0
    workers: int = 1
    g: int = 3
    b: int = 12
    p: int = 2
    a: tuple[int, ...] = (0,) * 12

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.params_path is not None and self.subcommand not in ("verify-config", "verify-all"):
            raise ValueError("--params only applies to verify-config and verify-all")


def _lattice(cfg: RunConfig) -> CertReport:
    return blowup_lattice_report(cfg.seed)


def _config(cfg: RunConfig, params: ModelParams) -> CertReport:
    return full_configuration_report(params, cfg.workers)


def build_report(cfg: RunConfig, params: ModelParams | None = None) -> CertReport:
    params = params or ModelParams()
    cmd = cfg.subcommand
    if cmd == "verify-lattice":
        return _lattice(cfg)
    if cmd == "verify-config":
        return _config(cfg, params)
    if cmd == "verify-obstruction":
        return obstruction_report(cfg.g, cfg.b, workers=cfg.workers)
    if cmd == "seifert":
        return seifert_report(cfg.p, cfg.a)
    if cmd == "sw-check":
        return sw_contradiction_check()
    parts = [
        _lattice(cfg),
        obstruction_report(3, 12, workers=cfg.workers),
        combine("seifert_p2", [seifert_report(2, (0,) * 12)]),
        combine("seifert_p3", [seifert_report(3, (0,) * 12)]),
        sw_contradiction_check(),
        _config(cfg, params),
    ]
    return combine("all", parts)


def run(cfg: RunConfig) -> int:
    """Build and write the report; 0 when it passes, 1 otherwise, 2 for bad input."""
    params = None
    if cfg.params_path is not None:
        try:
            params = load_params(cfg.params_path)
        except ParamsError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        report = build_report(cfg, params)
    except (InvariantError, SizeError, ParamsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    write_report(report, cfg.report_path)
    if cfg.report_path != "-":
        print(report.summary(), file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sbverify", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", default="-", help="output JSON path, '-' for stdout (default)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized property samples")
    common.add_argument("--workers", type=int, default=_default_workers(),
                        help=f"worker processes (default from ${WORKERS_ENV}, else 1)")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("verify-lattice", parents=[common], help="lattice basis and boundary abelianizations")
    p = sub.add_parser("verify-config", parents=[common], help="coincidences and genus of the curve configuration")
    p.add_argument("--params", help="key = value parameter file")
    p = sub.add_parser("verify-obstruction", parents=[common], help="the disjoint-curve obstruction")
    p.add_argument("--g", type=int, default=3)
    p.add_argument("--b", type=int, default=12)
    p = sub.add_parser("seifert", parents=[common], help="homology and spin type of the Seifert bundle")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--a", type=_int_list, default=(0,) * 12, help="twelve comma-separated integers")
    sub.add_parser("sw-check", parents=[common], help="basic class square against the Noether value")
    p = sub.add_parser("verify-all", parents=[common], help="every check with default parameters")
    p.add_argument("--params", help="key = value parameter file for the configuration")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            subcommand=args.subcommand,
            report_path=args.report,
            params_path=getattr(args, "params", None),
            seed=args.seed,
            workers=args.workers,
            g=getattr(args, "g", 3),
            b=getattr(args, "b", 12),
            p=getattr(args, "p", 2),
            a=getattr(args, "a", (0,) * 12),
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
