"""
Complex baseband <-> separate I and Q codeword streams

Both components share one full scale derived from their combined RMS, so the
two streams use the same step size.
"""
from typing import Tuple

import numpy as np

from errors import MetadataError, QuantizerInputError
from quantization.dpcm import dpcm_decode, dpcm_encode_traced, residual_full_scale
from quantization.models import ChannelTag, CodewordStream, QuantizerConfig, QuantizerMode
from quantization.pcm import full_scale_for, pcm_dequantize, pcm_quantize


def _components(samples: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    samples = np.asarray(samples, dtype=np.complex128)
    if samples.size == 0:
        raise QuantizerInputError("Cannot quantize an empty sample array")
    return np.ascontiguousarray(samples.real), np.ascontiguousarray(samples.imag)


def shared_full_scale(samples: np.ndarray, quantizer_config: QuantizerConfig) -> float:
    """clip_sigma x combined RMS of I and Q (of their prediction residuals for DPCM)"""
    i, q = _components(samples)
    if quantizer_config.mode == QuantizerMode.PCM:
        return full_scale_for(np.concatenate([i, q]), quantizer_config.clip_sigma)
    return residual_full_scale([i, q], quantizer_config)


def quantize_iq(samples: np.ndarray, quantizer_config: QuantizerConfig) -> Tuple[CodewordStream, CodewordStream]:
    """Quantize I and Q as two streams with a shared full scale"""
    streams, _ = quantize_iq_traced(samples, quantizer_config)
    return streams


def quantize_iq_traced(samples: np.ndarray, quantizer_config: QuantizerConfig):
    """
    Like quantize_iq, also returning the encoder-side complex reconstruction.

    Returns:
        ((stream_i, stream_q), reconstruction)
    """
    quantizer_config.check()
    i, q = _components(samples)
    full_scale = shared_full_scale(samples, quantizer_config)

    if quantizer_config.mode == QuantizerMode.PCM:
        stream_i = pcm_quantize(i, quantizer_config, full_scale, ChannelTag.I)
        stream_q = pcm_quantize(q, quantizer_config, full_scale, ChannelTag.Q)
        reconstruction = pcm_dequantize(stream_i) + 1j * pcm_dequantize(stream_q)
    else:
        stream_i, recon_i = dpcm_encode_traced(i, quantizer_config, full_scale, ChannelTag.I)
        stream_q, recon_q = dpcm_encode_traced(q, quantizer_config, full_scale, ChannelTag.Q)
        reconstruction = recon_i + 1j * recon_q

    return (stream_i, stream_q), reconstruction


def dequantize(stream: CodewordStream) -> np.ndarray:
    """Dispatch on the stream's mode"""
    if stream.config is None:
        raise MetadataError("Stream carries no quantizer metadata")
    if stream.config.mode == QuantizerMode.PCM:
        return pcm_dequantize(stream)
    return dpcm_decode(stream)


def dequantize_iq(stream_i: CodewordStream, stream_q: CodewordStream) -> np.ndarray:
    """
    Raises:
        MetadataError: the two streams disagree in length or channel tags
    """
    if stream_i.channel_tag != ChannelTag.I or stream_q.channel_tag != ChannelTag.Q:
        raise MetadataError("Expected an I stream and a Q stream")
    if stream_i.sample_count != stream_q.sample_count:
        raise MetadataError(
            f"I stream holds {stream_i.sample_count} samples, Q stream {stream_q.sample_count}"
        )
    return dequantize(stream_i) + 1j * dequantize(stream_q)
