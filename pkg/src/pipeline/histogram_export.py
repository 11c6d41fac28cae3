"""
Codeword histogram export with moment statistics
"""
from pathlib import Path

import numpy as np
from pydantic import BaseModel

from errors import QuantizerInputError
from exports.report_exporter import ReportExporter
from quantization.histogram import histogram_counts
from quantization.models import CodewordStream
from quantization.pcm import midrise_levels


class GaussianFit(BaseModel):
    """Moments of the dequantized level distribution"""
    mean: float
    sigma: float
    skewness: float
    excess_kurtosis: float
    peak_probability: float


def fit_histogram(counts: np.ndarray, levels: np.ndarray = None) -> GaussianFit:
    """
    Moments of a histogram over `levels` (codeword indices when omitted).

    Raises:
        QuantizerInputError: all counts zero
    """
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if total == 0:
        raise QuantizerInputError("Cannot fit an empty histogram")
    if levels is None:
        levels = np.arange(counts.size, dtype=np.float64)
    probabilities = counts / total

    mean = float(np.dot(probabilities, levels))
    centered = levels - mean
    variance = float(np.dot(probabilities, centered ** 2))
    sigma = float(np.sqrt(variance))
    if sigma > 0:
        skewness = float(np.dot(probabilities, centered ** 3)) / sigma ** 3
        excess_kurtosis = float(np.dot(probabilities, centered ** 4)) / variance ** 2 - 3.0
    else:
        skewness = 0.0
        excess_kurtosis = 0.0

    return GaussianFit(
        mean=mean,
        sigma=sigma,
        skewness=skewness,
        excess_kurtosis=excess_kurtosis,
        peak_probability=float(probabilities.max()),
    )


def export_histogram(stream: CodewordStream, path) -> GaussianFit:
    """
    Write one row per codeword of the alphabet (zero counts included) and
    fit the levels the codewords dequantize to. DPCM codewords dequantize
    to prediction residuals.

    Raises:
        QuantizerInputError: empty stream
        OSError: path not writable
    """
    if stream.codewords.size == 0:
        raise QuantizerInputError("Cannot export the histogram of an empty stream")
    counts = histogram_counts(stream)
    total = int(counts.sum())
    rows = (
        {'codeword': codeword, 'count': int(count), 'probability': int(count) / total}
        for codeword, count in enumerate(counts.tolist())
    )
    ReportExporter().export_histogram(rows, Path(path))
    levels = midrise_levels(np.arange(counts.size), stream.full_scale, stream.qb)
    return fit_histogram(counts, levels)
