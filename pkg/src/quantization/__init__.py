"""
PCM and adaptive DPCM quantizers for fronthaul I/Q samples
"""
from quantization.models import (
    ChannelTag, CodewordStream, QuantizerConfig, QuantizerMode, ResidualScaling,
)
from quantization.pcm import pcm_quantize, pcm_dequantize
from quantization.dpcm import dpcm_encode, dpcm_encode_traced, dpcm_decode
from quantization.iq import quantize_iq, quantize_iq_traced, dequantize, dequantize_iq
from quantization.histogram import codeword_histogram, histogram_counts
from quantization.stream_io import read_codeword_stream, write_codeword_stream

__all__ = [
    'ChannelTag',
    'CodewordStream',
    'QuantizerConfig',
    'QuantizerMode',
    'ResidualScaling',
    'pcm_quantize',
    'pcm_dequantize',
    'dpcm_encode',
    'dpcm_encode_traced',
    'dpcm_decode',
    'quantize_iq',
    'quantize_iq_traced',
    'dequantize',
    'dequantize_iq',
    'codeword_histogram',
    'histogram_counts',
    'read_codeword_stream',
    'write_codeword_stream',
]
