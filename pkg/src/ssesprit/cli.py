"""Command-line interface.

Subcommands:
  synth     model JSON -> samples CSV (optionally noisy)
  estimate  samples CSV -> estimation result JSON
  bounds    model JSON + noise level -> certificate report JSON
  sweep     sweep config JSON -> per-trial/aggregate CSV + SVG charts
  fig2      reconstruction benchmark -> stem SVG + JSON

Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import svgplot
from .bounds import evaluate_bounds
from .esprit import ss_esprit
from .exceptions import EstimationError, ModelGenerationError
from .experiments import ExperimentConfig, run_figure2, run_sweep
from .music import music_estimate
from .signal_model import (
    NoiseSpec,
    SampleVector,
    SpectralModel,
    add_noise,
    nu_for_target_nsr,
    synthesize,
)

USAGE_ERROR = 1
NUMERICAL_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_model(path: str) -> SpectralModel:
    return SpectralModel.load(path)


def _cmd_synth(args) -> int:
    model = _load_model(args.model)
    y = synthesize(model, args.M)
    if args.nu is not None and args.nsr is not None:
        raise ValueError("pass --nu or --nsr, not both")
    nu = args.nu
    if args.nsr is not None:
        nu = nu_for_target_nsr(y, args.nsr)
    if nu:
        y = add_noise(y, NoiseSpec(nu=nu, seed=args.seed))
    out = _out_dir(args) / "samples.csv"
    y.to_csv(out)
    print(out)
    return 0


def _cmd_estimate(args) -> int:
    y = SampleVector.from_csv(args.samples)
    methods = ("esprit", "music") if args.method == "both" else (args.method,)
    out_dir = _out_dir(args)
    for method in methods:
        if method == "esprit":
            result = ss_esprit(y, s=args.s, L=args.L)
        else:
            if args.s is None:
                raise ValueError("music needs --s")
            result = music_estimate(y, s=args.s, L=args.L,
                                    grid_density=args.grid_density)
        name = "result.json" if len(methods) == 1 else f"result_{method}.json"
        result.save(out_dir / name)
        print(out_dir / name)
    return 0


def _cmd_bounds(args) -> int:
    model = _load_model(args.model)
    nu = args.nu
    if args.nsr is not None:
        if nu is not None:
            raise ValueError("pass --nu or --nsr, not both")
        nu = nu_for_target_nsr(synthesize(model, args.M), args.nsr)
    report = evaluate_bounds(model, args.M, L=args.L,
                             noise=NoiseSpec(nu=nu or 0.0, seed=args.seed))
    out = _out_dir(args) / "bound_report.json"
    report.save(out)
    print(out)
    return 0


def _cmd_sweep(args) -> int:
    config = ExperimentConfig.load(args.config)
    if args.seed is not None:
        config = ExperimentConfig.from_dict({**config.to_dict(), "seed": args.seed})
    result = run_sweep(config)
    out_dir = _out_dir(args)
    result.save_csv(out_dir / "sweep.csv")
    svgplot.write_svg(result.success_chart(), out_dir / "success_rate.svg")
    svgplot.write_svg(result.hausdorff_chart(), out_dir / "mean_hausdorff.svg")
    for agg in result.aggregates:
        print(f"{agg.method} nsr={agg.nsr:g} success_rate={agg.success_rate:.3f} "
              f"mean_hausdorff_rl={agg.mean_hausdorff_rl:.4g} failures={agg.failures}")
    print(out_dir / "sweep.csv")
    return 0


def _cmd_fig2(args) -> int:
    methods = ("esprit", "music") if args.method == "both" else (args.method,)
    result = run_figure2(seed=args.seed, nsr_target=args.nsr, L=args.L,
                         methods=methods)
    out_dir = _out_dir(args)
    result.save(out_dir / "fig2.json")
    svgplot.write_svg(result.stem_chart(), out_dir / "fig2.svg")
    for method, err in result.hausdorff_rl.items():
        print(f"{method}: hausdorff = {err:.4g} RL")
    print(out_dir / "fig2.json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ssesprit",
                     description="Single-snapshot line-spectrum estimation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="model JSON to samples CSV")
    p.add_argument("--model", required=True, help="model JSON path")
    p.add_argument("--M", type=int, required=True, help="sample degree (M+1 samples)")
    p.add_argument("--nu", type=float, default=None, help="noise level per component")
    p.add_argument("--nsr", type=float, default=None, help="target noise-to-signal ratio")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("estimate", help="samples CSV to result JSON")
    p.add_argument("--samples", required=True, help="samples CSV path")
    p.add_argument("--method", choices=("esprit", "music", "both"), default="esprit")
    p.add_argument("--s", type=int, default=None, help="number of modes")
    p.add_argument("--L", type=int, default=None, help="pencil split")
    p.add_argument("--grid-density", type=int, default=20)
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("bounds", help="model JSON + noise to certificate JSON")
    p.add_argument("--model", required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--nu", type=float, default=None)
    p.add_argument("--nsr", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("sweep", help="config JSON to CSV + SVG")
    p.add_argument("--config", required=True, help="sweep config JSON path")
    p.add_argument("--seed", type=int, default=None, help="override config seed")
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("fig2", help="reconstruction benchmark to SVG + JSON")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nsr", type=float, default=0.10)
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--method", choices=("esprit", "music", "both"), default="both")
    p.add_argument("--out", default=".")
    p.set_defaults(func=_cmd_fig2)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EstimationError, ModelGenerationError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
