"""
Closed-loop DPCM with an NLMS-adapted linear predictor

The predictor works on reconstructed samples only, so the decoder can run
the same recursion from the codewords and land on bit-identical output.
Encoder and decoder share one loop to keep the floating-point operation
order identical.
"""
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from errors import ConfigurationError, MetadataError, QuantizerInputError
from quantization.models import (
    ChannelTag, CodewordStream, QuantizerConfig, QuantizerMode, ResidualScaling,
)
from quantization.pcm import check_codeword_range, full_scale_for, rms

# Regularizer for the NLMS normalization, relative to full_scale^2
_NLMS_EPSILON = 1e-9


def prediction_residual(samples: np.ndarray, order: int) -> np.ndarray:
    """
    Residual of the order-P least-squares linear predictor on the input.

    Used only to size the residual quantizer; the codec itself adapts its
    weights online.
    """
    samples = np.asarray(samples, dtype=np.float64)
    n = samples.size
    lagged = np.zeros((n, order))
    for p in range(order):
        lagged[p + 1:, p] = samples[:n - p - 1]
    weights, *_ = np.linalg.lstsq(lagged, samples, rcond=None)
    return samples - lagged @ weights


def residual_full_scale(components: Sequence[np.ndarray], quantizer_config: QuantizerConfig) -> float:
    """
    Full scale of the residual quantizer over one or more components
    (I and Q share one value).

    Raises:
        QuantizerInputError: empty or zero-RMS input
    """
    combined = np.concatenate([np.asarray(c, dtype=np.float64) for c in components])
    input_full_scale = full_scale_for(combined, quantizer_config.clip_sigma)
    if quantizer_config.scaling == ResidualScaling.INPUT:
        return input_full_scale

    order = quantizer_config.predictor_order
    residual = np.concatenate([prediction_residual(c, order) for c in components])
    level = rms(residual)
    if level == 0:
        raise QuantizerInputError("Input is perfectly predictable; residual has zero RMS")
    return quantizer_config.clip_sigma * level


def _run_dpcm(count: int, qb: int, full_scale: float, order: int, step_size: float,
              samples: Optional[List[float]] = None,
              codewords: Optional[List[int]] = None) -> Tuple[List[int], np.ndarray]:
    """
    Shared encode/decode recursion.

    With samples given the residual is quantized; with codewords given they
    are replayed. Weights start at (1, 0, ..., 0) with a zero history.
    """
    levels = 1 << qb
    top = levels - 1
    step = 2.0 * full_scale / levels
    epsilon = _NLMS_EPSILON * full_scale * full_scale

    weights = [1.0] + [0.0] * (order - 1)
    history = [0.0] * order
    out_codewords = [] if samples is not None else codewords
    reconstruction = np.empty(count, dtype=np.float64)

    for n in range(count):
        prediction = 0.0
        energy = epsilon
        for w, h in zip(weights, history):
            prediction += w * h
            energy += h * h

        if samples is not None:
            index = math.floor((samples[n] - prediction + full_scale) / step)
            if index < 0:
                index = 0
            elif index > top:
                index = top
            out_codewords.append(index)
        else:
            index = codewords[n]

        residual = -full_scale + (index + 0.5) * step
        value = prediction + residual
        reconstruction[n] = value

        gain = step_size * residual / energy
        weights = [w + gain * h for w, h in zip(weights, history)]
        history = [value] + history[:-1]

    return out_codewords, reconstruction


def dpcm_encode_traced(samples: np.ndarray, quantizer_config: QuantizerConfig,
                       full_scale: Optional[float] = None,
                       channel_tag: ChannelTag = ChannelTag.I) -> Tuple[CodewordStream, np.ndarray]:
    """
    Encode and also return the encoder's own reconstruction.

    Raises:
        ConfigurationError: invalid config or a non-DPCM mode
        QuantizerInputError: empty or zero-RMS input
    """
    quantizer_config.check()
    if quantizer_config.mode != QuantizerMode.DPCM:
        raise ConfigurationError("dpcm_encode requires a DPCM config")

    samples = np.asarray(samples, dtype=np.float64)
    if samples.size == 0:
        raise QuantizerInputError("Cannot quantize an empty sample array")
    if full_scale is None:
        full_scale = residual_full_scale([samples], quantizer_config)
    elif full_scale <= 0:
        raise ConfigurationError("full_scale must be positive")

    codewords, reconstruction = _run_dpcm(
        samples.size,
        quantizer_config.qb,
        float(full_scale),
        quantizer_config.predictor_order,
        quantizer_config.adaptation_step,
        samples=samples.tolist(),
    )
    stream = CodewordStream(
        codewords=np.asarray(codewords, dtype=np.uint32),
        qb=quantizer_config.qb,
        config=quantizer_config,
        full_scale=float(full_scale),
        sample_count=int(samples.size),
        channel_tag=channel_tag,
    )
    return stream, reconstruction


def dpcm_encode(samples: np.ndarray, quantizer_config: QuantizerConfig,
                full_scale: Optional[float] = None,
                channel_tag: ChannelTag = ChannelTag.I) -> CodewordStream:
    """Encode residuals of the adaptive predictor"""
    stream, _ = dpcm_encode_traced(samples, quantizer_config, full_scale, channel_tag)
    return stream


def _check_dpcm_metadata(stream: CodewordStream):
    quantizer_config = stream.config
    if quantizer_config is None:
        raise MetadataError("DPCM stream carries no quantizer metadata")
    if quantizer_config.mode != QuantizerMode.DPCM:
        raise MetadataError(f"Expected a DPCM stream, got {quantizer_config.mode.value}")
    if quantizer_config.predictor_order is None or quantizer_config.adaptation_step is None:
        raise MetadataError("DPCM stream is missing predictor_order or adaptation_step")
    if stream.qb != quantizer_config.qb:
        raise MetadataError(f"Stream qb {stream.qb} differs from config qb {quantizer_config.qb}")
    if stream.sample_count != len(stream.codewords):
        raise MetadataError(
            f"Header promises {stream.sample_count} samples, payload holds {len(stream.codewords)}"
        )
    if stream.full_scale <= 0:
        raise MetadataError("DPCM stream full_scale must be positive")


def dpcm_decode(stream: CodewordStream) -> np.ndarray:
    """
    Rebuild samples by running the encoder recursion on the codewords.

    Raises:
        MetadataError: missing or inconsistent metadata
        CorruptStreamError: codeword outside the alphabet
    """
    _check_dpcm_metadata(stream)
    check_codeword_range(stream)
    if stream.sample_count == 0:
        return np.empty(0, dtype=np.float64)

    _, reconstruction = _run_dpcm(
        stream.sample_count,
        stream.qb,
        stream.full_scale,
        stream.config.predictor_order,
        stream.config.adaptation_step,
        codewords=[int(c) for c in stream.codewords.tolist()],
    )
    return reconstruction

