"""
Block arithmetic coding with exact rational intervals

Each block narrows [u, v) from [0, 1): symbol i of the model maps to the
subinterval [u + w*low_i, u + w*high_i) with low_i/high_i its cumulative
count edges over the total. Intervals are held as integers over the implicit
denominator total^n, so every narrowing multiplies the width by exactly
p(symbol).

A block ends when the next symbol would push v - u below 2^-block_bits. It is
terminated by truncating the midpoint (u + v)/2 to L = ceil(-log2(v - u)) + 1
bits and dropping trailing zeros.

A block also ends once the exact denominator outgrows
_DENOMINATOR_LIMIT x block_bits bits. That only triggers for highly skewed
models, where many symbols fit in the width budget.
"""
import bisect
import math
from fractions import Fraction
from typing import List, Tuple

import numpy as np

import config
from entropy.bitio import BitReader, BitWriter
from entropy.bitstream import CodedBitstream, Coder
from entropy.model import ProbabilityModel
from errors import ConfigurationError, CorruptBlockError, TruncatedPayloadError, UnseenSymbolError
from quantization.models import CodewordStream

_DENOMINATOR_LIMIT = 2


def _ceil_log2_ratio(numerator: int, denominator: int) -> int:
    """Smallest m >= 0 with denominator * 2^m >= numerator"""
    if numerator <= denominator:
        return 0
    m = max(numerator.bit_length() - denominator.bit_length(), 0)
    while (denominator << m) < numerator:
        m += 1
    while m > 0 and (denominator << (m - 1)) >= numerator:
        m -= 1
    return m


def _terminate(low: int, width: int, denominator: int) -> Tuple[int, int]:
    """Termination tag of [low/d, (low+width)/d) as (value, bit length)"""
    length = _ceil_log2_ratio(denominator, width) + 1
    value = ((2 * low + width) << length) // (2 * denominator)
    if value == 0:
        return 0, 0
    while length > 0 and not value & 1:
        value >>= 1
        length -= 1
    return value, length


def terminate_interval(u: Fraction, v: Fraction) -> str:
    """
    Termination bits for the interval [u, v) as a binary-fraction string.
    """
    u, v = Fraction(u), Fraction(v)
    if not 0 <= u < v <= 1:
        raise ConfigurationError("Interval must satisfy 0 <= u < v <= 1")
    denominator = math.lcm(u.denominator, v.denominator)
    low = u.numerator * (denominator // u.denominator)
    high = v.numerator * (denominator // v.denominator)
    value, length = _terminate(low, high - low, denominator)
    return format(value, f'0{length}b') if length else ''


class AcBlockState:
    """
    Interval state of one block: u = low/d, v = (low + width)/d with
    d = total^n after n symbols.
    """

    def __init__(self, model: ProbabilityModel):
        self.total = model.total_count
        self.counts = model.count_list
        self.cumulative = model.cumulative_counts
        self.reset()

    def reset(self):
        self.low = 0
        self.width = 1
        self.denominator = 1
        self.symbol_count = 0

    @property
    def u(self) -> Fraction:
        return Fraction(self.low, self.denominator)

    @property
    def v(self) -> Fraction:
        return Fraction(self.low + self.width, self.denominator)

    def fits(self, index: int, block_bits: int) -> bool:
        """True when pushing index keeps v - u >= 2^-block_bits"""
        if self.denominator.bit_length() > _DENOMINATOR_LIMIT * block_bits:
            return False
        return (self.width * self.counts[index]) << block_bits >= self.denominator * self.total

    def push(self, index: int):
        self.low = self.low * self.total + self.width * self.cumulative[index]
        self.width *= self.counts[index]
        self.denominator *= self.total
        self.symbol_count += 1

    def terminate(self) -> Tuple[int, int]:
        return _terminate(self.low, self.width, self.denominator)


def _symbol_indices(stream: CodewordStream, model: ProbabilityModel) -> List[int]:
    index_of = model.index_of
    try:
        return [index_of[c] for c in stream.codewords.tolist()]
    except KeyError as e:
        raise UnseenSymbolError(e.args[0]) from None


def arithmetic_encode(stream: CodewordStream, model: ProbabilityModel,
                      block_bits: int = None) -> CodedBitstream:
    """
    Raises:
        UnseenSymbolError: stream holds a codeword the model lacks
    """
    if block_bits is None:
        block_bits = config.AC_BLOCK_BITS
    if block_bits < 1:
        raise ConfigurationError("block_bits must be positive")

    indices = _symbol_indices(stream, model)
    writer = BitWriter()
    blocks = []
    state = AcBlockState(model) if indices else None

    for index in indices:
        if state.symbol_count and not state.fits(index, block_bits):
            value, length = state.terminate()
            writer.write(value, length)
            blocks.append((state.symbol_count, length))
            state.reset()
        state.push(index)

    if state is not None and state.symbol_count:
        value, length = state.terminate()
        writer.write(value, length)
        blocks.append((state.symbol_count, length))

    payload, bit_count = writer.getvalue()
    return CodedBitstream(
        coder=Coder.ARITHMETIC,
        model=model,
        original_qb=stream.qb,
        original_count=len(indices),
        payload=payload,
        payload_bits=bit_count,
        blocks=blocks,
    )


def _decode_block(tag: int, tag_bits: int, symbol_count: int, model: ProbabilityModel) -> List[int]:
    """
    Replay one block from its tag value/2^tag_bits.

    remainder tracks (tag - u) * total^n * 2^tag_bits and scaled_width tracks
    (v - u) * total^n * 2^tag_bits, so the symbol search stays in integers.
    """
    total = model.total_count
    counts = model.count_list
    cumulative = model.cumulative_counts

    remainder = tag
    scaled_width = 1 << tag_bits
    indices = []
    for _ in range(symbol_count):
        scaled = remainder * total
        target = scaled // scaled_width
        index = bisect.bisect_right(cumulative, target) - 1
        if not 0 <= index < len(counts):
            raise CorruptBlockError("Tag fell outside the coding interval")
        remainder = scaled - scaled_width * cumulative[index]
        scaled_width *= counts[index]
        indices.append(index)
    return indices


def arithmetic_decode(bitstream: CodedBitstream, model: ProbabilityModel = None,
                      verify: bool = True) -> np.ndarray:
    """
    Decode block by block using the stored (symbol_count, bit_length) table.

    With verify set, each block's termination bits are recomputed from the
    decoded symbols and must match the stored bits.

    Raises:
        TruncatedPayloadError: payload shorter than the block table promises
        CorruptBlockError: block table inconsistent, or a block re-encodes
            to different bits
    """
    if model is None:
        model = bitstream.model
    if bitstream.original_count == 0:
        return np.empty(0, dtype=np.uint32)
    if len(model) == 0:
        raise CorruptBlockError("Empty model for a non-empty stream")

    blocks = bitstream.blocks
    if sum(count for count, _ in blocks) != bitstream.original_count:
        raise CorruptBlockError("Block symbol counts do not add up to original_count")
    table_bits = sum(bits for _, bits in blocks)
    if table_bits != bitstream.payload_bits:
        raise CorruptBlockError(
            f"Block table lists {table_bits} bits, bitstream records {bitstream.payload_bits}"
        )
    if len(bitstream.payload) < (table_bits + 7) // 8:
        raise TruncatedPayloadError(
            f"Payload holds {len(bitstream.payload)} bytes, block table needs {(table_bits + 7) // 8}"
        )
    if len(bitstream.payload) > (table_bits + 7) // 8:
        raise CorruptBlockError("Payload longer than the block table accounts for")

    reader = BitReader(bitstream.payload, table_bits)
    state = AcBlockState(model) if verify else None
    codewords = model.codeword_list
    out = []
    for block_number, (symbol_count, bit_length) in enumerate(blocks):
        tag = reader.read(bit_length)
        indices = _decode_block(tag, bit_length, symbol_count, model)
        if verify:
            state.reset()
            for index in indices:
                state.push(index)
            if state.terminate() != (tag, bit_length):
                raise CorruptBlockError(f"Block {block_number} does not re-encode to its stored bits")
        out.extend(codewords[i] for i in indices)

    return np.asarray(out, dtype=np.uint32)

