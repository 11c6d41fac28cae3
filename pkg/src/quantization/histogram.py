"""
Codeword histograms of quantizer output
"""
import numpy as np

from entropy.model import ProbabilityModel
from errors import QuantizerInputError
from quantization.models import CodewordStream
from quantization.pcm import check_codeword_range


def histogram_counts(stream: CodewordStream) -> np.ndarray:
    """Dense count per codeword value over [0, 2^qb)"""
    check_codeword_range(stream)
    return np.bincount(stream.codewords.astype(np.int64), minlength=1 << stream.qb)


def codeword_histogram(stream: CodewordStream) -> ProbabilityModel:
    """
    Probability model of a stream's codewords (zero-count codewords dropped).

    Raises:
        QuantizerInputError: empty stream
    """
    if stream.codewords.size == 0:
        raise QuantizerInputError("Cannot build a histogram of an empty stream")
    return ProbabilityModel.from_counts(histogram_counts(stream), alphabet_bits=stream.qb)
