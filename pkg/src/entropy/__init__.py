"""
Lossless entropy coding of quantizer codewords (Huffman and block arithmetic)
"""
from entropy.model import ProbabilityModel, entropy
from entropy.bitstream import (
    Coder, CodedBitstream, effective_qbs, read_coded_bitstream, write_coded_bitstream,
)
from entropy.huffman import (
    HuffmanTree, huffman_build, huffman_decode, huffman_encode, kraft_sum, verify_prefix_free,
)
from entropy.arithmetic import AcBlockState, arithmetic_encode, arithmetic_decode, terminate_interval
from entropy.benchmark import BenchmarkReport, benchmark_coders

__all__ = [
    'ProbabilityModel',
    'entropy',
    'Coder',
    'CodedBitstream',
    'effective_qbs',
    'read_coded_bitstream',
    'write_coded_bitstream',
    'HuffmanTree',
    'huffman_build',
    'huffman_encode',
    'huffman_decode',
    'kraft_sum',
    'verify_prefix_free',
    'AcBlockState',
    'arithmetic_encode',
    'arithmetic_decode',
    'terminate_interval',
    'BenchmarkReport',
    'benchmark_coders',
]
