"""
Static Huffman coding of codeword streams

Tree construction is deterministic: the two lowest-weight nodes merge
first; equal weights prefer the node holding the smallest codeword, then the
earlier-created node. The lower-weight child takes bit 1.
"""
import heapq
import itertools
from typing import Any, Dict

import numpy as np
from pydantic import BaseModel, ConfigDict

from entropy.bitio import BitReader, BitWriter
from entropy.bitstream import CodedBitstream, Coder
from entropy.model import ProbabilityModel
from errors import ConfigurationError, CorruptStreamError, TruncatedPayloadError, UnseenSymbolError
from quantization.models import CodewordStream


class HuffmanTree(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    model: ProbabilityModel
    code_table: Dict[int, str]
    avg_code_length: float
    # leaf: codeword int; internal: (child for bit 0, child for bit 1)
    root: Any


def huffman_build(model: ProbabilityModel) -> HuffmanTree:
    """
    Raises:
        ConfigurationError: empty model
    """
    if len(model) == 0:
        raise ConfigurationError("Cannot build a Huffman tree from an empty model")

    if len(model) == 1:
        codeword = model.codeword_list[0]
        return HuffmanTree(model=model, code_table={codeword: '0'}, avg_code_length=1.0,
                           root=(codeword, None))

    created = itertools.count()
    # (weight, smallest codeword inside, creation index, node)
    heap = [
        (count, codeword, next(created), codeword)
        for codeword, count in zip(model.codeword_list, model.count_list)
    ]
    heapq.heapify(heap)

    while len(heap) > 1:
        low = heapq.heappop(heap)
        high = heapq.heappop(heap)
        node = (high[3], low[3])
        heapq.heappush(heap, (low[0] + high[0], min(low[1], high[1]), next(created), node))

    root = heap[0][3]
    code_table = {}
    stack = [(root, '')]
    while stack:
        node, prefix = stack.pop()
        if isinstance(node, tuple):
            stack.append((node[0], prefix + '0'))
            stack.append((node[1], prefix + '1'))
        else:
            code_table[node] = prefix

    lengths = np.array([len(code_table[c]) for c in model.codeword_list])
    avg = float(np.dot(model.probabilities, lengths))
    return HuffmanTree(model=model, code_table=code_table, avg_code_length=avg, root=root)


def kraft_sum(code_table: Dict[int, str]) -> float:
    return sum(2.0 ** -len(code) for code in code_table.values())


def verify_prefix_free(code_table: Dict[int, str]) -> bool:
    codes = sorted(code_table.values())
    return all(not b.startswith(a) for a, b in zip(codes, codes[1:]))


def huffman_encode(stream: CodewordStream, tree: HuffmanTree) -> CodedBitstream:
    """
    Raises:
        UnseenSymbolError: stream holds a codeword the model lacks
    """
    table = tree.code_table
    writer = BitWriter()
    try:
        writer.write_bits(''.join([table[c] for c in stream.codewords.tolist()]))
    except KeyError as e:
        raise UnseenSymbolError(e.args[0]) from None

    payload, bit_count = writer.getvalue()
    return CodedBitstream(
        coder=Coder.HUFFMAN,
        model=tree.model,
        original_qb=stream.qb,
        original_count=int(stream.codewords.size),
        payload=payload,
        payload_bits=bit_count,
    )


def huffman_decode(bitstream: CodedBitstream, tree: HuffmanTree = None) -> np.ndarray:
    """
    Walk the tree bit by bit for original_count codewords.

    Raises:
        TruncatedPayloadError: payload ends mid-codeword or is shorter than
            payload_bits promises
        CorruptStreamError: a path leaves the tree, or non-padding bits
            remain after the last codeword
    """
    count = bitstream.original_count
    if count == 0:
        return np.empty(0, dtype=np.uint32)

    if len(bitstream.payload) * 8 < bitstream.payload_bits:
        raise TruncatedPayloadError(
            f"Payload holds {len(bitstream.payload)} bytes, header promises {bitstream.payload_bits} bits"
        )
    if tree is None:
        tree = huffman_build(bitstream.model)

    text = BitReader(bitstream.payload).text
    available = min(bitstream.payload_bits, len(text))
    root = tree.root
    out = []
    position = 0
    for _ in range(count):
        node = root
        while isinstance(node, tuple):
            if position >= available:
                raise TruncatedPayloadError(f"Payload ended after {len(out)} of {count} codewords")
            node = node[text[position] == '1']
            position += 1
        if node is None:
            raise CorruptStreamError(f"Invalid code at bit {position - 1}")
        out.append(node)

    trailing = text[position:]
    if len(trailing) >= 8 or '1' in trailing:
        raise CorruptStreamError(f"{len(trailing)} bits remain after the last codeword")
    return np.asarray(out, dtype=np.uint32)
