"""
Single-configuration pipeline:
generate -> quantize -> entropy encode -> decode -> dequantize -> demodulate -> EVM -> budget
"""
import time
from contextlib import contextmanager
from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from budget.link_budget import channel_count, cpri_equivalent_rate
from budget.models import BudgetParams
from entropy.arithmetic import arithmetic_decode, arithmetic_encode
from entropy.bitstream import Coder, CodedBitstream
from entropy.huffman import huffman_build, huffman_decode, huffman_encode
from errors import ConfigurationError, MFHError, RoundtripMismatchError, StageError
from pipeline.run_config import RunConfig, scheme_name
from quantization.histogram import codeword_histogram
from quantization.iq import dequantize_iq, quantize_iq
from quantization.models import CodewordStream
from utils.logger import get_logger
from utils.metrics_tracker import RunMetricsTracker
from waveform.evm import compute_evm, evm_threshold
from waveform.models import EvmReport, OfdmSignal
from waveform.ofdm import demodulate, generate_ofdm


class SweepRow(BaseModel):
    qam_order: int
    scheme: str
    qb: int
    effective_qb: Optional[float] = None
    evm_percent: Optional[float] = None
    passes_threshold: Optional[bool] = None
    channels: Optional[int] = None
    rate_tbps: Optional[float] = None
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@contextmanager
def stage(name: str, metrics: RunMetricsTracker = None):
    """
    Time a stage and tag unexpected failures with its name.

    Configuration and roundtrip errors pass through untouched.
    """
    start = time.perf_counter()
    try:
        yield
    except (ConfigurationError, RoundtripMismatchError, StageError):
        raise
    except (MFHError, ValueError, ArithmeticError, OSError) as e:
        raise StageError(name, e) from e
    finally:
        if metrics is not None:
            metrics.record_stage(name, time.perf_counter() - start)


def entropy_encode(stream: CodewordStream, coder: Coder, block_bits: int = None) -> CodedBitstream:
    """Code one stream with a model built from its own histogram"""
    model = codeword_histogram(stream)
    if coder == Coder.HUFFMAN:
        return huffman_encode(stream, huffman_build(model))
    if coder == Coder.ARITHMETIC:
        return arithmetic_encode(stream, model, block_bits)
    raise ConfigurationError(f"No entropy coder for {coder.value}")


def entropy_decode(bitstream: CodedBitstream) -> np.ndarray:
    if bitstream.coder == Coder.HUFFMAN:
        return huffman_decode(bitstream)
    return arithmetic_decode(bitstream)


def check_roundtrip(stream: CodewordStream, decoded: np.ndarray, coder: Coder):
    """
    Raises:
        RoundtripMismatchError: decoded codewords differ from the quantizer output
    """
    original = stream.codewords
    if decoded.shape == original.shape and np.array_equal(decoded, original):
        return
    if decoded.shape != original.shape:
        first = int(min(decoded.size, original.size))
    else:
        first = int(np.flatnonzero(decoded != original)[0])
    get_logger().log_roundtrip_failure(stream.channel_tag.value, coder.value, first)
    raise RoundtripMismatchError(
        f"{coder.value} roundtrip of the {stream.channel_tag.value} stream diverges at codeword {first}"
    )


def code_streams(streams: Tuple[CodewordStream, CodewordStream], coder: Coder,
                 block_bits: int = None, metrics: RunMetricsTracker = None
                 ) -> Tuple[float, Tuple[CodewordStream, CodewordStream]]:
    """
    Entropy-code both streams, decode them back and verify the roundtrip.

    Returns:
        (effective QBs over I and Q together, decoded streams)
    """
    if coder == Coder.NONE:
        return float(streams[0].qb), streams

    with stage('encode', metrics):
        bitstreams = [entropy_encode(s, coder, block_bits) for s in streams]
    with stage('decode', metrics):
        decoded = [entropy_decode(b) for b in bitstreams]

    for stream, codewords in zip(streams, decoded):
        check_roundtrip(stream, codewords, coder)

    total_bits = sum(b.payload_bits for b in bitstreams)
    total_count = sum(b.original_count for b in bitstreams)
    effective = total_bits / total_count if total_count else 0.0
    decoded_streams = tuple(s.with_codewords(c) for s, c in zip(streams, decoded))
    return effective, decoded_streams


def measure_evm(streams: Tuple[CodewordStream, CodewordStream], signal: OfdmSignal,
                thresholds: Dict[int, float], metrics: RunMetricsTracker = None) -> EvmReport:
    """Dequantize, demodulate and compare with the transmitted grid"""
    with stage('dequantize', metrics):
        received = dequantize_iq(*streams)
    with stage('demodulate', metrics):
        grid = demodulate(received, signal.config)
    with stage('evm', metrics):
        return compute_evm(grid, signal.reference_grid, signal.config.qam_order, thresholds)


def budget_columns(effective_qb: float, params: BudgetParams) -> Dict[str, float]:
    return {
        'channels': channel_count(effective_qb, params),
        'rate_tbps': cpri_equivalent_rate(effective_qb, params),
    }


def run_pipeline(run_config: RunConfig, metrics: RunMetricsTracker = None) -> SweepRow:
    """
    Run one (QAM order, quantizer, coder) configuration end to end.

    Raises:
        ConfigurationError: invalid run config or an order with no EVM threshold
        StageError: a stage failed, tagged with its name
        RoundtripMismatchError: entropy decode did not reproduce the codewords
    """
    run_config.check()
    logger = get_logger()
    thresholds = run_config.thresholds()
    ofdm = run_config.signal_config()
    evm_threshold(ofdm.qam_order, thresholds)
    quantizer = run_config.quantizer
    scheme = scheme_name(quantizer.mode, run_config.coder)

    start = time.perf_counter()
    with stage('generate', metrics):
        signal = generate_ofdm(ofdm)
    logger.log_stage('generate', f"{ofdm.qam_order}-QAM, {ofdm.sample_count} samples",
                     time.perf_counter() - start)

    with stage('quantize', metrics):
        streams = quantize_iq(signal.samples, quantizer)

    effective, decoded = code_streams(streams, run_config.coder, run_config.ac_block_bits, metrics)
    report = measure_evm(decoded, signal, thresholds, metrics)

    with stage('budget', metrics):
        budget = budget_columns(effective, run_config.budget)

    row = SweepRow(
        qam_order=ofdm.qam_order,
        scheme=scheme,
        qb=quantizer.qb,
        effective_qb=effective,
        evm_percent=report.evm_rms_percent,
        passes_threshold=report.passes_threshold,
        **budget,
    )
    logger.log_row(row.qam_order, row.scheme, row.qb, row.effective_qb, row.evm_percent, row.passes_threshold)
    return row
