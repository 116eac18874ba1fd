"""ridgelab: fingerprint image de-noising library and benchmark CLI.

Core pieces: a 3x3 block-homogeneity de-noiser (`denoise`), classical
baselines (gaussian/median/histeq/VisuShrink/Gabor/composite), seeded noise
injectors, MSE/SNR/PSNR metrics, and a deterministic benchmark harness.
"""

from . import errors
from .bench import (
    CSV_HEADER,
    BenchConfig,
    load_config,
    parse_config,
    render_report,
    run_bench,
)
from .filters import gaussian_blur, histogram_equalize, median_filter
from .gabor import (
    FrequencyMap,
    GaborConfig,
    OrientationField,
    estimate_orientation,
    estimate_ridge_frequency,
    gabor_enhance,
    gabor_kernel,
    quantize_orientation,
    wavelet_gabor_composite,
)
from .image import (
    Image,
    RgbImage,
    load_image,
    normalize_clip,
    quantize,
    resize_nearest,
    round_half_up,
    save_pgm,
    to_grayscale,
)
from .metrics import MetricsReport, estimate_noise_sigma, mse, psnr_db, report, snr_db
from .noise import NoiseSpec, add_gaussian, add_salt_pepper, add_speckle
from .pca import (
    Block,
    BlockGrid,
    HomogeneityVerdict,
    PcaConfig,
    analyze_block,
    denoise,
    flag_map,
    partition_blocks,
    repair_pixel,
    resolve_tau,
)
from .pipeline import Pipeline, Stage, parse_pipeline
from .rng import normal_stream, raw_stream, uniform_stream
from .synth import parse_synth_spec, synth_ridge
from .wavelet import (
    HaarPyramid,
    haar_dwt2,
    haar_idwt2,
    hard_threshold,
    visu_shrink,
    visu_threshold,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "BlockGrid",
    "BenchConfig",
    "CSV_HEADER",
    "FrequencyMap",
    "GaborConfig",
    "HaarPyramid",
    "HomogeneityVerdict",
    "Image",
    "MetricsReport",
    "NoiseSpec",
    "OrientationField",
    "PcaConfig",
    "Pipeline",
    "RgbImage",
    "Stage",
    "add_gaussian",
    "add_salt_pepper",
    "add_speckle",
    "analyze_block",
    "denoise",
    "errors",
    "estimate_noise_sigma",
    "estimate_orientation",
    "estimate_ridge_frequency",
    "flag_map",
    "gabor_enhance",
    "gabor_kernel",
    "gaussian_blur",
    "haar_dwt2",
    "haar_idwt2",
    "hard_threshold",
    "histogram_equalize",
    "load_config",
    "load_image",
    "median_filter",
    "mse",
    "normal_stream",
    "normalize_clip",
    "parse_config",
    "parse_pipeline",
    "parse_synth_spec",
    "partition_blocks",
    "psnr_db",
    "quantize",
    "quantize_orientation",
    "raw_stream",
    "render_report",
    "repair_pixel",
    "report",
    "resize_nearest",
    "resolve_tau",
    "round_half_up",
    "run_bench",
    "save_pgm",
    "snr_db",
    "synth_ridge",
    "to_grayscale",
    "uniform_stream",
    "visu_shrink",
    "visu_threshold",
    "wavelet_gabor_composite",
]
