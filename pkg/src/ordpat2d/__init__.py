"""2x2 ordinal pattern statistics for images.

Every 2x2 pixel window is reduced to its rank pattern; the 24 patterns
split into three types (smooth / curve / saddle) whose frequencies yield
two texture parameters, smoothness tau and curve structure kappa, besides
permutation entropy and Jensen-Shannon complexity.
"""

from .core import (
    PATTERNS,
    TieBreakPolicy,
    as_grid,
    break_ties,
    classify_type,
    extract_fields,
    pattern_index,
    rank_window,
    type_of_index,
)
from .errors import (
    DecodeError,
    DegenerateInputError,
    DelayTooLargeError,
    EmptyInputError,
    InvalidInputError,
    OrdPatError,
    TieViolationError,
    UnsupportedFormatError,
)
from .ingest import load_grid, normalize, save_grid, tile, to_gray
from .stats import (
    FeatureVector,
    PatternHistogram,
    TypeHistogram,
    alt_params,
    analyze,
    js_complexity,
    pattern_histogram,
    permutation_entropy,
    tau_kappa,
    type_histogram,
)
from .synth import FractalSpec, checkerboard, fractal_surface, ramp, white_noise

__version__ = "0.1.0"
