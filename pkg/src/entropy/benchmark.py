"""
Encode+decode timing for the Huffman and arithmetic coders
"""
import statistics
import time
from typing import Dict

from pydantic import BaseModel

import config
from entropy.arithmetic import arithmetic_decode, arithmetic_encode
from entropy.bitstream import Coder
from entropy.huffman import huffman_build, huffman_decode, huffman_encode
from entropy.model import ProbabilityModel
from errors import ConfigurationError
from quantization.models import CodewordStream


class CoderTiming(BaseModel):
    coder: Coder
    median_seconds: float
    seconds_per_symbol: float
    symbols_per_second: float
    payload_bits: int


class BenchmarkReport(BaseModel):
    symbol_count: int
    runs: int
    timings: Dict[str, CoderTiming]
    ac_to_hc_ratio: float


def _time_runs(action, runs: int) -> float:
    samples = []
    for _ in range(runs):
        start = time.perf_counter()
        action()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def benchmark_coders(stream: CodewordStream, model: ProbabilityModel,
                     runs: int = None, block_bits: int = None) -> BenchmarkReport:
    """
    Median wall time of encode+decode per coder over at least 5 runs.

    Wall-clock only; the ratio is comparable within one machine.
    """
    runs = config.BENCH_RUNS if runs is None else runs
    if runs < 5:
        raise ConfigurationError("benchmark_coders needs at least 5 runs")
    count = int(stream.codewords.size)
    if count == 0:
        raise ConfigurationError("Cannot benchmark an empty stream")

    tree = huffman_build(model)
    hc_bits = huffman_encode(stream, tree).payload_bits
    ac_bits = arithmetic_encode(stream, model, block_bits).payload_bits

    def huffman_roundtrip():
        huffman_decode(huffman_encode(stream, tree), tree)

    def arithmetic_roundtrip():
        arithmetic_decode(arithmetic_encode(stream, model, block_bits), model)

    timings = {}
    for coder, action, bits in (
        (Coder.HUFFMAN, huffman_roundtrip, hc_bits),
        (Coder.ARITHMETIC, arithmetic_roundtrip, ac_bits),
    ):
        median = _time_runs(action, runs)
        timings[coder.value] = CoderTiming(
            coder=coder,
            median_seconds=median,
            seconds_per_symbol=median / count,
            symbols_per_second=count / median if median > 0 else float('inf'),
            payload_bits=bits,
        )

    hc = timings[Coder.HUFFMAN.value].median_seconds
    ac = timings[Coder.ARITHMETIC.value].median_seconds
    return BenchmarkReport(
        symbol_count=count,
        runs=runs,
        timings=timings,
        ac_to_hc_ratio=ac / hc if hc > 0 else float('inf'),
    )
