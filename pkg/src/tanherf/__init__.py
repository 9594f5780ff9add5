"""Finite tanh-series erf, inverse-CDF Gaussian sampling, and Dawson-function tools."""

from .dawson_approx import PUBLISHED_G3, GaussianSum, SegmentedDawson, eval_segmented, fit_gaussian_sum
from .errors import (
    AccuracyError,
    BracketError,
    DomainError,
    FitError,
    TanhErfError,
    UnsupportedOrderError,
)
from .reffuncs import dawson_derivative_ref, dawson_ref, erf_ref
from .sampler import (
    PRESETS,
    fit_counts,
    fit_histogram,
    invert_cdf,
    make_stream,
    preset_series,
    sample,
    sample_n,
)
from .tanhseries import TanhSeries, build_series, eval_series, max_abs_error
from .tuner import TABLE1, TuneReport, alpha_trend_fit, tune_alpha

__version__ = "0.1.0"
