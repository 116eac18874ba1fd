"""Command-line front end: denoise, noise, and bench subcommands."""

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .bench import THREADS_ENV, load_config, render_report, resolve_threads, run_bench
from .errors import DimensionMismatchError, RidgelabError
from .image import load_image, resize_nearest, save_pgm
from .metrics import report
from .noise import NoiseSpec
from .pipeline import parse_pipeline
from .synth import parse_synth_spec, synth_ridge


def _json_metric(value):
    if value is None:
        return None
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return float(value)


def _parse_tau(text: str):
    if text.strip().lower() == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"tau must be a number or 'auto', got {text!r}") from None


def _parse_dims(text: str):
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"expected WxH, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"expected integer WxH, got {text!r}") from None


def cmd_denoise(args) -> int:
    image = load_image(args.input)
    if args.resize:
        w, h = _parse_dims(args.resize)
        image = resize_nearest(image, w, h)
    pipe = parse_pipeline(
        args.pipe,
        tau=_parse_tau(args.tau),
        passes=args.passes,
        stretch=args.stretch,
        orient_bins=args.quantize_orient,
    )
    out = pipe.apply(image)
    save_pgm(out, args.output)
    if args.ref:
        ref = load_image(args.ref)
        try:
            rep = report(ref, out)
        except DimensionMismatchError as exc:
            print(f"ridgelab: error: {exc}", file=sys.stderr)
            return 2
        print(
            json.dumps(
                {
                    "mse": _json_metric(rep.mse),
                    "snr_db": _json_metric(rep.snr_db),
                    "psnr_db": _json_metric(rep.psnr_db),
                    "sigma_hat": _json_metric(rep.sigma_hat),
                }
            )
        )
    return 0


def cmd_noise(args) -> int:
    if (args.input is None) == (args.synth is None):
        raise ValueError("need exactly one input: a file path or --synth WxH:period:deg")
    if args.synth is not None:
        clean = synth_ridge(*parse_synth_spec(args.synth))
    else:
        clean = load_image(args.input)
    spec = NoiseSpec.parse(args.spec)
    save_pgm(spec.apply(clean), args.output)
    return 0


def cmd_bench(args) -> int:
    config = load_config(args.config)
    cells = len(config.inputs) * len(config.noises) * len(config.pipelines)
    threads = resolve_threads(os.environ.get(THREADS_ENV), cells)
    rows, failures = run_bench(config, threads=threads, with_timing=not args.no_timing)
    Path(args.output).write_text(render_report(rows, args.format, include_error=failures > 0))
    if failures:
        for row in rows:
            if row["error"]:
                print(
                    "ridgelab: bench cell failed: "
                    f"{row['input']} | {row['noise']} | {row['pipeline']}: {row['error']}",
                    file=sys.stderr,
                )
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ridgelab", description="Fingerprint image de-noising and benchmarking."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("denoise", help="run a filter pipeline over an image")
    d.add_argument("input", help="input image (PGM or PNG)")
    d.add_argument("--pipe", required=True, help="pipeline spec, e.g. 'gaussian:1|pca:24,1'")
    d.add_argument("-o", "--output", required=True, help="output PGM path")
    d.add_argument("--ref", help="clean reference; prints a JSON metrics line")
    d.add_argument("--resize", help="nearest-neighbor resize to WxH before filtering")
    d.add_argument("--tau", default="24", help="default tau for pca stages (number or 'auto')")
    d.add_argument("--passes", type=int, default=1, help="default pass count for pca stages")
    d.add_argument("--stretch", action="store_true", help="min-max stretch pca output")
    d.add_argument(
        "--quantize-orient",
        type=int,
        metavar="N",
        help="snap gabor/wgc orientations to N directions (e.g. 16)",
    )
    d.set_defaults(func=cmd_denoise)

    n = sub.add_parser("noise", help="write a deterministic noisy image")
    n.add_argument("input", nargs="?", help="input image (PGM or PNG)")
    n.add_argument("--synth", metavar="WxH:period:deg", help="use a synthetic ridge fixture")
    n.add_argument("--spec", required=True, help="noise spec kind:param:seed, e.g. sp:0.05:42")
    n.add_argument("-o", "--output", required=True, help="output PGM path")
    n.set_defaults(func=cmd_noise)

    b = sub.add_parser("bench", help="run a benchmark config and write a report")
    b.add_argument("config", help="benchmark config file")
    b.add_argument("-o", "--output", required=True, help="report path")
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    b.add_argument("--no-timing", action="store_true", help="omit wall times for diffable output")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RidgelabError, OSError, ValueError) as exc:
        print(f"ridgelab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
