"""
Uniform midrise PCM quantizer

Levels sit at -full_scale + (k + 0.5) * step for k in [0, 2^qb), with
step = 2 * full_scale / 2^qb. Samples beyond +-full_scale clip to the
outermost level.
"""
from typing import Optional

import numpy as np

from errors import ConfigurationError, CorruptStreamError, MetadataError, QuantizerInputError
from quantization.models import ChannelTag, CodewordStream, QuantizerConfig, QuantizerMode


def rms(samples: np.ndarray) -> float:
    samples = np.asarray(samples, dtype=np.float64)
    return float(np.sqrt(np.mean(samples * samples)))


def full_scale_for(samples: np.ndarray, clip_sigma: float) -> float:
    """
    Raises:
        QuantizerInputError: empty or zero-RMS input
    """
    samples = np.asarray(samples, dtype=np.float64)
    if samples.size == 0:
        raise QuantizerInputError("Cannot quantize an empty sample array")
    level = rms(samples)
    if level == 0:
        raise QuantizerInputError("Cannot derive a full scale from a zero-RMS input")
    return clip_sigma * level


def midrise_codewords(values: np.ndarray, full_scale: float, qb: int) -> np.ndarray:
    """Codeword index of each value (clipping to the outer levels)"""
    levels = 1 << qb
    step = 2.0 * full_scale / levels
    index = np.floor((np.asarray(values, dtype=np.float64) + full_scale) / step)
    return np.clip(index, 0, levels - 1).astype(np.uint32)


def midrise_levels(codewords: np.ndarray, full_scale: float, qb: int) -> np.ndarray:
    """Reconstruction level of each codeword"""
    step = 2.0 * full_scale / (1 << qb)
    return -full_scale + (np.asarray(codewords, dtype=np.float64) + 0.5) * step


def check_codeword_range(stream: CodewordStream):
    """
    Raises:
        CorruptStreamError: codeword outside [0, 2^qb)
    """
    if stream.codewords.size and int(stream.codewords.max()) >= (1 << stream.qb):
        raise CorruptStreamError(
            f"Codeword {int(stream.codewords.max())} exceeds the {stream.qb}-bit alphabet"
        )


def pcm_quantize(samples: np.ndarray, quantizer_config: QuantizerConfig,
                 full_scale: Optional[float] = None,
                 channel_tag: ChannelTag = ChannelTag.I) -> CodewordStream:
    """
    Quantize one real-valued component.

    full_scale defaults to clip_sigma x RMS(samples); callers quantizing
    I and Q together pass the shared value.

    Raises:
        ConfigurationError: invalid config or a non-PCM mode
        QuantizerInputError: empty or zero-RMS input
    """
    quantizer_config.check()
    if quantizer_config.mode != QuantizerMode.PCM:
        raise ConfigurationError("pcm_quantize requires a PCM config")

    samples = np.asarray(samples, dtype=np.float64)
    if samples.size == 0:
        raise QuantizerInputError("Cannot quantize an empty sample array")
    if full_scale is None:
        full_scale = full_scale_for(samples, quantizer_config.clip_sigma)
    elif full_scale <= 0:
        raise ConfigurationError("full_scale must be positive")

    return CodewordStream(
        codewords=midrise_codewords(samples, full_scale, quantizer_config.qb),
        qb=quantizer_config.qb,
        config=quantizer_config,
        full_scale=float(full_scale),
        sample_count=int(samples.size),
        channel_tag=channel_tag,
    )


def pcm_dequantize(stream: CodewordStream) -> np.ndarray:
    """
    Raises:
        MetadataError: stream is not PCM or its metadata is inconsistent
        CorruptStreamError: codeword outside the alphabet
    """
    if stream.config is None or stream.config.mode != QuantizerMode.PCM:
        raise MetadataError("pcm_dequantize requires PCM stream metadata")
    if stream.qb != stream.config.qb:
        raise MetadataError(f"Stream qb {stream.qb} differs from config qb {stream.config.qb}")
    check_codeword_range(stream)
    return midrise_levels(stream.codewords, stream.full_scale, stream.qb)
