"""Exception types raised by ridgelab.

File-system failures use the builtin exceptions (``FileNotFoundError``,
``OSError``); everything else derives from :class:`RidgelabError` so callers
can catch the whole family at the CLI boundary.
"""


class RidgelabError(Exception):
    """Base class for all ridgelab-specific errors."""


class UnsupportedFormatError(RidgelabError):
    """Input file is not a P2/P5 PGM or a supported PNG."""


class MalformedHeaderError(RidgelabError):
    """PGM structure is broken: bad dims, bad maxval, or truncated data."""


class InvalidDimensionsError(RidgelabError, ValueError):
    """A requested image size is empty or negative."""


class InvalidRangeError(RidgelabError, ValueError):
    """Intensity range bounds are inverted or degenerate (lo >= hi)."""


class NegativeSigmaError(RidgelabError, ValueError):
    """A standard deviation parameter was negative."""


class NegativeVarianceError(RidgelabError, ValueError):
    """A variance parameter was negative."""


class DensityOutOfRangeError(RidgelabError, ValueError):
    """Impulse corruption density outside [0, 1]."""


class DimensionMismatchError(RidgelabError, ValueError):
    """Two images that must share dimensions do not."""


class ImageTooSmallError(RidgelabError, ValueError):
    """Image too small for the requested analysis (needs >= 2x2)."""


class IndivisibleDimsError(RidgelabError, ValueError):
    """Image dimensions are not divisible by 2**levels."""


class BlockTooSmallError(RidgelabError, ValueError):
    """Orientation block size below the minimum of 4 pixels."""


class PipelineParseError(RidgelabError, ValueError):
    """A filter pipeline spec string could not be parsed."""


class NoiseSpecError(RidgelabError, ValueError):
    """A noise spec string could not be parsed."""


class BenchConfigError(RidgelabError, ValueError):
    """A benchmark config file could not be parsed."""
