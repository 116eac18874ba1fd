"""Benchmark harness: run (input x noise x pipeline) cells and report metrics.

Config files are line oriented; '#' starts a comment anywhere:

    input synth:256x256:8:45     # or a PGM/PNG path
    noise sp:0.05:42
    pipe  pca:24,1

Each cell scores the pipeline output against the clean reference and against
the noisy input, estimates residual noise sigma on the output, and records
wall time.  Rows are sorted by (input, noise, pipeline), so reports are
byte-stable regardless of execution order or thread count.
"""

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .errors import BenchConfigError, NoiseSpecError, PipelineParseError
from .image import Image, load_image
from .metrics import estimate_noise_sigma, mse, psnr_db, snr_db
from .noise import NoiseSpec
from .pipeline import Pipeline, parse_pipeline
from .synth import parse_synth_spec, synth_ridge

CSV_HEADER = (
    "input,noise,pipeline,seed,mse_clean,snr_clean,psnr_clean,"
    "mse_noisy,snr_noisy,psnr_noisy,sigma_hat,ms"
)
_COLUMNS = CSV_HEADER.split(",")
THREADS_ENV = "RIDGELAB_THREADS"


@dataclass
class BenchConfig:
    inputs: list
    noises: list
    pipelines: list


def parse_config(text: str) -> BenchConfig:
    inputs, noises, pipelines = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        directive, _, rest = line.partition(" ")
        directive = directive.lower()
        rest = rest.strip()
        try:
            if directive == "input":
                if not rest:
                    raise BenchConfigError("input needs a path or synth spec")
                if rest.startswith("synth:"):
                    parse_synth_spec(rest[len("synth:") :])
                inputs.append(rest)
            elif directive == "noise":
                noises.append(NoiseSpec.parse(rest))
            elif directive == "pipe":
                pipelines.append(parse_pipeline(rest))
            else:
                raise BenchConfigError(f"unknown directive {directive!r}")
        except (BenchConfigError, NoiseSpecError, PipelineParseError, ValueError) as exc:
            raise BenchConfigError(f"line {lineno}: {exc}") from None
    if not pipelines:
        raise BenchConfigError("no pipelines")
    if not inputs:
        raise BenchConfigError("no inputs")
    if not noises:
        raise BenchConfigError("no noise specs")
    return BenchConfig(inputs, noises, pipelines)


def load_config(path) -> BenchConfig:
    return parse_config(Path(path).read_text())


def load_input(token: str) -> Image:
    if token.startswith("synth:"):
        return synth_ridge(*parse_synth_spec(token[len("synth:") :]))
    return load_image(token)


def resolve_threads(value, cells: int) -> int:
    """Interpret the RIDGELAB_THREADS setting; 0 or unset means auto."""
    if value is None or str(value).strip() == "":
        n = 0
    else:
        try:
            n = int(str(value).strip())
        except ValueError:
            raise BenchConfigError(f"{THREADS_ENV} must be an integer, got {value!r}") from None
        if n < 0:
            raise BenchConfigError(f"{THREADS_ENV} must be >= 0, got {n}")
    if n == 0:
        n = os.cpu_count() or 1
    return max(1, min(n, max(cells, 1)))


def _blank_row(input_token: str, noise: NoiseSpec, pipe: Pipeline) -> dict:
    row = {c: None for c in _COLUMNS}
    row.update(
        input=input_token, noise=str(noise), pipeline=pipe.spec, seed=noise.seed, error=""
    )
    return row


def _run_cell(row: dict, clean: Image, noisy: Image, pipe: Pipeline, with_timing: bool):
    t0 = time.perf_counter()
    out = pipe.apply(noisy)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    row["mse_clean"] = mse(clean, out)
    row["snr_clean"] = snr_db(clean, out)
    row["psnr_clean"] = psnr_db(clean, out)
    row["mse_noisy"] = mse(noisy, out)
    row["snr_noisy"] = snr_db(noisy, out)
    row["psnr_noisy"] = psnr_db(noisy, out)
    if out.width >= 2 and out.height >= 2:
        row["sigma_hat"] = estimate_noise_sigma(out)
    if with_timing:
        row["ms"] = elapsed_ms


def run_bench(config: BenchConfig, threads: int = 1, with_timing: bool = True):
    """Run every cell; returns (sorted rows, failure count).

    A failed cell still yields a row, with its metric fields empty and the
    diagnostic in row["error"].
    """
    cleans = {}
    clean_errors = {}
    for token in config.inputs:
        if token in cleans or token in clean_errors:
            continue
        try:
            cleans[token] = load_input(token)
        except Exception as exc:
            clean_errors[token] = f"{type(exc).__name__}: {exc}"

    noisies = {}
    noisy_errors = {}
    for token in config.inputs:
        if token not in cleans:
            continue
        for spec in config.noises:
            key = (token, str(spec))
            if key in noisies or key in noisy_errors:
                continue
            try:
                noisies[key] = spec.apply(cleans[token])
            except Exception as exc:
                noisy_errors[key] = f"{type(exc).__name__}: {exc}"

    def cell(token, spec, pipe):
        row = _blank_row(token, spec, pipe)
        key = (token, str(spec))
        if token in clean_errors:
            row["error"] = clean_errors[token]
            return row
        if key in noisy_errors:
            row["error"] = noisy_errors[key]
            return row
        try:
            _run_cell(row, cleans[token], noisies[key], pipe, with_timing)
        except Exception as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
        return row

    jobs = [
        (token, spec, pipe)
        for token in config.inputs
        for spec in config.noises
        for pipe in config.pipelines
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda j: cell(*j), jobs))
    else:
        rows = [cell(*j) for j in jobs]
    rows.sort(key=lambda r: (r["input"], r["noise"], r["pipeline"]))
    return rows, sum(1 for r in rows if r["error"])


def _csv_value(column: str, value) -> str:
    if value is None:
        return ""
    if column == "ms":
        return format(value, ".3f")
    if column in ("input", "noise", "pipeline", "error"):
        return str(value)
    if column == "seed":
        return str(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


def render_csv(rows, include_error: bool) -> str:
    columns = _COLUMNS + ["error"] if include_error else _COLUMNS
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_value(c, row.get(c)) for c in columns])
    return buf.getvalue()


def _json_value(column: str, value):
    if value is None or column in ("input", "noise", "pipeline", "seed", "error"):
        return value
    if column != "ms" and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return float(value)


def render_json(rows, include_error: bool) -> str:
    columns = _COLUMNS + ["error"] if include_error else _COLUMNS
    out = [{c: _json_value(c, row.get(c)) for c in columns} for row in rows]
    return json.dumps(out, indent=2) + "\n"


def render_report(rows, fmt: str, include_error: bool) -> str:
    if fmt == "json":
        return render_json(rows, include_error)
    return render_csv(rows, include_error)
