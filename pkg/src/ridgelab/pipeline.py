"""Filter pipeline grammar: "name:params|name:params", composed left to right.

Registered stages: gaussian:sigma, median:r, histeq, visu:sigma|auto, gabor,
wgc, pca[:tau[,passes]].  A pca stage without explicit parameters picks up
the defaults passed to the parser (the CLI's --tau/--passes/--stretch flags);
gabor and wgc pick up the optional orientation-bin count.
"""

from dataclasses import dataclass

from .errors import PipelineParseError, RidgelabError
from .filters import gaussian_blur, histogram_equalize, median_filter
from .gabor import GaborConfig, gabor_enhance, wavelet_gabor_composite
from .image import Image
from .pca import PcaConfig, denoise
from .wavelet import visu_shrink

KNOWN_FILTERS = ("gaussian", "median", "histeq", "visu", "gabor", "wgc", "pca")


def _fmt_num(v: float) -> str:
    f = float(v)
    if f == int(f) and abs(f) < 1e15:
        return str(int(f))
    return repr(f)


@dataclass(frozen=True)
class Stage:
    """One parsed filter: its name, canonical spec text, and the callable."""

    name: str
    spec: str
    fn: object

    def apply(self, image: Image) -> Image:
        return self.fn(image)


@dataclass(frozen=True)
class Pipeline:
    stages: tuple

    @property
    def spec(self) -> str:
        return "|".join(s.spec for s in self.stages)

    def apply(self, image: Image) -> Image:
        for stage in self.stages:
            image = stage.apply(image)
        return image

    def __str__(self):
        return self.spec


def _one_float(name: str, params: str, what: str) -> float:
    try:
        return float(params)
    except ValueError:
        raise PipelineParseError(f"{name}: non-numeric {what} {params!r}") from None


def _one_int(name: str, params: str, what: str) -> int:
    try:
        return int(params)
    except ValueError:
        raise PipelineParseError(f"{name}: non-integer {what} {params!r}") from None


def _no_params(name: str, params: str):
    if params:
        raise PipelineParseError(f"{name} takes no parameters, got {params!r}")


def _parse_stage(token: str, tau, passes, stretch, orient_bins) -> Stage:
    name, _, params = token.partition(":")
    name = name.strip().lower()
    params = params.strip()
    if name == "gaussian":
        sigma = _one_float(name, params, "sigma")
        if sigma < 0:
            raise PipelineParseError(f"gaussian: sigma must be >= 0, got {sigma}")
        return Stage(name, f"gaussian:{_fmt_num(sigma)}", lambda im: gaussian_blur(im, sigma))
    if name == "median":
        r = _one_int(name, params, "radius")
        if r < 1:
            raise PipelineParseError(f"median: radius must be >= 1, got {r}")
        return Stage(name, f"median:{r}", lambda im: median_filter(im, r))
    if name == "histeq":
        _no_params(name, params)
        return Stage(name, "histeq", histogram_equalize)
    if name == "visu":
        if params == "auto":
            sigma = "auto"
        else:
            sigma = _one_float(name, params, "sigma")
            if sigma < 0:
                raise PipelineParseError(f"visu: sigma must be >= 0, got {sigma}")
        label = "auto" if sigma == "auto" else _fmt_num(sigma)
        return Stage(name, f"visu:{label}", lambda im: visu_shrink(im, sigma))
    if name in ("gabor", "wgc"):
        _no_params(name, params)
        cfg = GaborConfig(orient_bins=orient_bins)
        fn = gabor_enhance if name == "gabor" else wavelet_gabor_composite
        return Stage(name, name, lambda im: fn(im, cfg))
    if name == "pca":
        stage_tau, stage_passes = tau, passes
        if params:
            fields = [p.strip() for p in params.split(",")]
            if len(fields) > 2:
                raise PipelineParseError(f"pca takes tau[,passes], got {params!r}")
            stage_tau = fields[0] if fields[0] == "auto" else _one_float(name, fields[0], "tau")
            if len(fields) == 2:
                stage_passes = _one_int(name, fields[1], "passes")
        try:
            cfg = PcaConfig(tau=stage_tau, max_passes=stage_passes, stretch_output=stretch)
        except RidgelabError as exc:
            raise PipelineParseError(f"pca: {exc}") from None
        tau_label = "auto" if cfg.tau == "auto" else _fmt_num(cfg.tau)
        return Stage(name, f"pca:{tau_label},{cfg.max_passes}", lambda im: denoise(im, cfg))
    raise PipelineParseError(f"unknown filter {name!r}")


def parse_pipeline(
    text: str, tau=24.0, passes: int = 1, stretch: bool = False, orient_bins=None
) -> Pipeline:
    """Parse a pipe-separated filter spec into an applicable Pipeline."""
    tokens = [t.strip() for t in text.strip().split("|")]
    if not text.strip() or any(not t for t in tokens):
        raise PipelineParseError(f"empty stage in pipeline spec {text!r}")
    return Pipeline(tuple(_parse_stage(t, tau, passes, stretch, orient_bins) for t in tokens))
