"""
Tests for the probability model, Huffman and arithmetic coders and the
MFHC file format.
"""
import math
import shutil
import sys
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

import numpy as np

# Ensure src/ is on path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from entropy import (  # noqa: E402
    AcBlockState, Coder, ProbabilityModel, arithmetic_decode, arithmetic_encode, benchmark_coders,
    effective_qbs, entropy, huffman_build, huffman_decode, huffman_encode, kraft_sum,
    read_coded_bitstream, terminate_interval, verify_prefix_free, write_coded_bitstream,
)
from entropy.bitstream import decode_coded_bitstream, encode_coded_bitstream  # noqa: E402
from errors import (  # noqa: E402
    ConfigurationError, CorruptBlockError, CorruptStreamError, MetadataError,
    TruncatedPayloadError, UnseenSymbolError,
)
from quantization.models import CodewordStream  # noqa: E402

# {A: 0.4, B: 0.3, C: 0.2, D: 0.1} as codewords 0..3
SKEWED_COUNTS = {0: 4, 1: 3, 2: 2, 3: 1}


def make_stream(codewords, qb=4):
    codewords = np.asarray(codewords, dtype=np.uint32)
    return CodewordStream(codewords=codewords, qb=qb, config=None, full_scale=1.0,
                          sample_count=int(codewords.size))


def skewed_model(alphabet_bits=2):
    return ProbabilityModel.from_counts(SKEWED_COUNTS, alphabet_bits=alphabet_bits)


class TestProbabilityModel(unittest.TestCase):

    def test_sorted_by_count_then_codeword(self):
        model = ProbabilityModel.from_counts({5: 2, 1: 2, 7: 3}, alphabet_bits=3)
        self.assertEqual(model.codeword_list, [7, 1, 5])
        self.assertEqual(model.count_list, [3, 2, 2])
        self.assertEqual(model.cumulative_counts, [0, 3, 5, 7])

    def test_zero_counts_dropped(self):
        model = ProbabilityModel.from_counts([0, 3, 0, 1], alphabet_bits=2)
        self.assertEqual(model.codeword_list, [1, 3])
        self.assertAlmostEqual(float(model.probabilities.sum()), 1.0, places=12)

    def test_negative_count_rejected(self):
        with self.assertRaises(ConfigurationError):
            ProbabilityModel.from_counts([1, -1], alphabet_bits=1)

    def test_entropy_values(self):
        self.assertAlmostEqual(entropy(ProbabilityModel.from_counts([1, 1], 1)), 1.0)
        self.assertEqual(entropy(ProbabilityModel.from_counts({3: 10}, 4)), 0.0)
        self.assertAlmostEqual(entropy(skewed_model()), 1.84644, delta=1e-4)


class TestHuffman(unittest.TestCase):

    def test_two_equal_symbols(self):
        tree = huffman_build(ProbabilityModel.from_counts([5, 5], alphabet_bits=1))
        self.assertEqual(sorted(len(code) for code in tree.code_table.values()), [1, 1])

    def test_worked_example(self):
        """0.4/0.3/0.2/0.1: lengths 1, 2, 3, 3 and l_c = 1.9"""
        tree = huffman_build(skewed_model())
        self.assertEqual(tree.code_table[0], '1')
        self.assertEqual(tree.code_table[1], '01')
        self.assertEqual(sorted([tree.code_table[2], tree.code_table[3]]), ['000', '001'])
        self.assertAlmostEqual(tree.avg_code_length, 1.9)

        h = entropy(skewed_model())
        self.assertLessEqual(h, tree.avg_code_length)
        self.assertLess(tree.avg_code_length, h + 1)

    def test_kraft_and_prefix_free(self):
        rng = np.random.default_rng(0)
        counts = rng.integers(1, 100, size=50)
        tree = huffman_build(ProbabilityModel.from_counts(counts, alphabet_bits=6))
        self.assertEqual(kraft_sum(tree.code_table), 1.0)
        self.assertTrue(verify_prefix_free(tree.code_table))

    def test_verify_prefix_free_detects_prefix(self):
        self.assertFalse(verify_prefix_free({0: '0', 1: '01'}))

    def test_single_symbol(self):
        model = ProbabilityModel.from_counts({5: 7}, alphabet_bits=4)
        tree = huffman_build(model)
        self.assertEqual(tree.code_table, {5: '0'})
        bitstream = huffman_encode(make_stream([5] * 7), tree)
        self.assertEqual(bitstream.payload_bits, 7)
        self.assertEqual(huffman_decode(bitstream).tolist(), [5] * 7)

    def test_empty_model(self):
        with self.assertRaises(ConfigurationError):
            huffman_build(ProbabilityModel.empty(4))

    def test_roundtrip(self):
        rng = np.random.default_rng(1)
        codewords = rng.choice(4, size=5000, p=[0.4, 0.3, 0.2, 0.1])
        tree = huffman_build(skewed_model())
        bitstream = huffman_encode(make_stream(codewords, qb=2), tree)
        decoded = huffman_decode(bitstream)
        self.assertEqual(decoded.dtype, np.uint32)
        np.testing.assert_array_equal(decoded, codewords)

    def test_unseen_symbol(self):
        with self.assertRaises(UnseenSymbolError):
            huffman_encode(make_stream([0, 9]), huffman_build(skewed_model(4)))

    def test_truncated_payload(self):
        tree = huffman_build(skewed_model())
        bitstream = huffman_encode(make_stream([3, 2, 3, 2, 3, 2, 1], qb=2), tree)
        truncated = bitstream.model_copy(update={'payload': bitstream.payload[:-1]})
        with self.assertRaises(TruncatedPayloadError):
            huffman_decode(truncated)

    def test_nonzero_padding(self):
        # '1' + '01' then padding 00001
        bitstream = huffman_encode(make_stream([0, 1], qb=2), huffman_build(skewed_model()))
        corrupt = bitstream.model_copy(update={'payload': b'\xa1', 'payload_bits': 8})
        with self.assertRaises(CorruptStreamError):
            huffman_decode(corrupt)

    def test_surplus_byte(self):
        bitstream = huffman_encode(make_stream([0, 1], qb=2), huffman_build(skewed_model()))
        padded = bitstream.model_copy(update={'payload': b'\xa0\x00', 'payload_bits': 16})
        with self.assertRaises(CorruptStreamError):
            huffman_decode(padded)

    def test_empty_stream(self):
        bitstream = huffman_encode(make_stream([], qb=2), huffman_build(skewed_model()))
        self.assertEqual(bitstream.payload, b'')
        self.assertEqual(huffman_decode(bitstream).size, 0)


class TestArithmeticTermination(unittest.TestCase):

    def test_worked_example(self):
        self.assertEqual(terminate_interval(Fraction(84, 128), Fraction(86, 128)), '1010101')

    def test_unit_interval(self):
        self.assertEqual(terminate_interval(Fraction(0), Fraction(1)), '1')

    def test_lower_edge_at_zero(self):
        # midpoint 1/8 truncated to 3 bits is 0.001, kept as is
        self.assertEqual(terminate_interval(Fraction(0), Fraction(1, 4)), '001')

    def test_tag_inside_interval(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            a, b = sorted(rng.integers(0, 10 ** 6, size=2).tolist())
            if a == b:
                continue
            u, v = Fraction(a, 10 ** 6), Fraction(b, 10 ** 6)
            bits = terminate_interval(u, v)
            value = Fraction(int(bits, 2), 2 ** len(bits)) if bits else Fraction(0)
            self.assertLessEqual(u, value)
            self.assertLess(value, v)

    def test_invalid_interval(self):
        with self.assertRaises(ConfigurationError):
            terminate_interval(Fraction(1, 2), Fraction(1, 2))


class TestAcBlockState(unittest.TestCase):

    def test_exact_nesting(self):
        model = skewed_model()
        state = AcBlockState(model)
        u, v = state.u, state.v
        self.assertEqual((u, v), (Fraction(0), Fraction(1)))
        for index in [0, 3, 1, 1, 2, 0, 3, 2]:
            state.push(index)
            self.assertLessEqual(u, state.u)
            self.assertLessEqual(state.v, v)
            self.assertEqual(state.v - state.u, (v - u) * Fraction(model.count_list[index], model.total_count))
            self.assertTrue(0 <= state.u < state.v <= 1)
            u, v = state.u, state.v

    def test_fits_respects_width_limit(self):
        state = AcBlockState(skewed_model())
        # p = 0.1 < 2^-3 is too narrow for a 3-bit block, p = 0.4 is not
        self.assertFalse(state.fits(3, 3))
        self.assertTrue(state.fits(0, 3))


class TestArithmetic(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(3)
        self.codewords = rng.choice(4, size=3000, p=[0.4, 0.3, 0.2, 0.1])
        self.stream = make_stream(self.codewords, qb=2)
        self.model = skewed_model()

    def test_roundtrip_single_block(self):
        bitstream = arithmetic_encode(self.stream, self.model)
        self.assertEqual(len(bitstream.blocks), 1)
        np.testing.assert_array_equal(arithmetic_decode(bitstream), self.codewords)

    def test_roundtrip_many_blocks(self):
        bitstream = arithmetic_encode(self.stream, self.model, block_bits=40)
        self.assertGreater(len(bitstream.blocks), 100)
        self.assertEqual(sum(count for count, _ in bitstream.blocks), self.codewords.size)
        self.assertEqual(sum(bits for _, bits in bitstream.blocks), bitstream.payload_bits)
        np.testing.assert_array_equal(arithmetic_decode(bitstream), self.codewords)

    def test_close_to_entropy(self):
        bitstream = arithmetic_encode(self.stream, self.model)
        empirical = ProbabilityModel.from_counts(np.bincount(self.codewords, minlength=4), 2)
        # static model differs from the empirical one; cross-entropy bounds the rate
        cross = -sum(p * math.log2(q) for p, q in zip(
            np.bincount(self.codewords, minlength=4) / self.codewords.size, [0.4, 0.3, 0.2, 0.1]))
        self.assertLess(effective_qbs(bitstream), cross + 0.01)
        self.assertGreater(effective_qbs(bitstream), empirical.entropy() - 0.05)

    def test_single_symbol_model(self):
        model = ProbabilityModel.from_counts({2: 5}, alphabet_bits=2)
        bitstream = arithmetic_encode(make_stream([2] * 5, qb=2), model)
        self.assertEqual(bitstream.payload_bits, 1)
        self.assertEqual(arithmetic_decode(bitstream).tolist(), [2] * 5)

    def test_deterministic(self):
        a = arithmetic_encode(self.stream, self.model, block_bits=64)
        b = arithmetic_encode(self.stream, self.model, block_bits=64)
        self.assertEqual(encode_coded_bitstream(a), encode_coded_bitstream(b))

    def test_corrupt_bit(self):
        bitstream = arithmetic_encode(self.stream, self.model, block_bits=64)
        payload = bytearray(bitstream.payload)
        payload[len(payload) // 2] ^= 0x10
        corrupt = bitstream.model_copy(update={'payload': bytes(payload)})
        with self.assertRaises(CorruptBlockError):
            arithmetic_decode(corrupt)

    def test_truncated_payload(self):
        bitstream = arithmetic_encode(self.stream, self.model)
        truncated = bitstream.model_copy(update={'payload': bitstream.payload[:-1]})
        with self.assertRaises(TruncatedPayloadError):
            arithmetic_decode(truncated)

    def test_inconsistent_block_table(self):
        bitstream = arithmetic_encode(self.stream, self.model, block_bits=64)
        blocks = list(bitstream.blocks)
        blocks[0] = (blocks[0][0] + 1, blocks[0][1])
        with self.assertRaises(CorruptBlockError):
            arithmetic_decode(bitstream.model_copy(update={'blocks': blocks}))

    def test_unseen_symbol(self):
        with self.assertRaises(UnseenSymbolError):
            arithmetic_encode(make_stream([0, 1, 7], qb=3), skewed_model(3))

    def test_empty_stream(self):
        bitstream = arithmetic_encode(make_stream([], qb=2), ProbabilityModel.empty(2))
        self.assertEqual(bitstream.blocks, [])
        self.assertEqual(arithmetic_decode(bitstream).size, 0)


class TestCodedBitstreamFiles(unittest.TestCase):

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        rng = np.random.default_rng(4)
        self.codewords = rng.choice(4, size=777, p=[0.4, 0.3, 0.2, 0.1])
        self.stream = make_stream(self.codewords, qb=2)

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_arithmetic_file(self):
        bitstream = arithmetic_encode(self.stream, skewed_model(), block_bits=50)
        path = write_coded_bitstream(Path(self.temp_dir) / 's.mfhc', bitstream)
        loaded = read_coded_bitstream(path)
        self.assertEqual(loaded.coder, Coder.ARITHMETIC)
        self.assertEqual(loaded.blocks, bitstream.blocks)
        self.assertEqual(loaded.payload_bits, bitstream.payload_bits)
        self.assertEqual(loaded.model.count_list, bitstream.model.count_list)
        np.testing.assert_array_equal(arithmetic_decode(loaded), self.codewords)

    def test_huffman_file(self):
        bitstream = huffman_encode(self.stream, huffman_build(skewed_model()))
        loaded = decode_coded_bitstream(encode_coded_bitstream(bitstream))
        self.assertEqual(loaded.coder, Coder.HUFFMAN)
        self.assertEqual(loaded.payload_bits, 8 * len(bitstream.payload))
        np.testing.assert_array_equal(huffman_decode(loaded), self.codewords)

    def test_bad_magic(self):
        data = bytearray(encode_coded_bitstream(arithmetic_encode(self.stream, skewed_model())))
        data[:4] = b'MFHQ'
        with self.assertRaises(MetadataError):
            decode_coded_bitstream(bytes(data))

    def test_qb_out_of_range(self):
        data = bytearray(encode_coded_bitstream(huffman_encode(self.stream, huffman_build(skewed_model()))))
        for bad_qb in (0, 40):
            data[6] = bad_qb
            with self.assertRaises(MetadataError):
                decode_coded_bitstream(bytes(data))

    def test_model_entry_outside_alphabet(self):
        data = bytearray(encode_coded_bitstream(arithmetic_encode(self.stream, skewed_model())))
        # first model entry codeword (u32 after the 19-byte header)
        data[19:23] = (0xFFFF).to_bytes(4, 'big')
        with self.assertRaises(MetadataError):
            decode_coded_bitstream(bytes(data))

    def test_truncated_model_table(self):
        data = encode_coded_bitstream(arithmetic_encode(self.stream, skewed_model()))
        with self.assertRaises(TruncatedPayloadError):
            decode_coded_bitstream(data[:25])

    def test_effective_qbs_excludes_header(self):
        bitstream = arithmetic_encode(self.stream, skewed_model())
        self.assertEqual(effective_qbs(bitstream), bitstream.payload_bits / 777)
        self.assertGreater(effective_qbs(bitstream, include_header=True), effective_qbs(bitstream))

    def test_uniform_stream_is_incompressible(self):
        qb = 5
        rng = np.random.default_rng(5)
        codewords = rng.permutation(np.repeat(np.arange(1 << qb), 40))
        stream = make_stream(codewords, qb=qb)
        model = ProbabilityModel.from_counts(np.bincount(codewords), alphabet_bits=qb)
        self.assertEqual(effective_qbs(huffman_encode(stream, huffman_build(model))), qb)
        ac = effective_qbs(arithmetic_encode(stream, model))
        self.assertGreaterEqual(ac, qb - 0.01)
        self.assertLessEqual(ac, qb + 0.05)


class TestBenchmark(unittest.TestCase):

    def test_report_structure(self):
        rng = np.random.default_rng(6)
        stream = make_stream(rng.choice(4, size=2000, p=[0.4, 0.3, 0.2, 0.1]), qb=2)
        report = benchmark_coders(stream, skewed_model(), runs=5)
        self.assertEqual(set(report.timings), {'HC', 'AC'})
        self.assertEqual(report.symbol_count, 2000)
        for timing in report.timings.values():
            self.assertGreater(timing.median_seconds, 0)
            self.assertTrue(math.isfinite(timing.symbols_per_second))
        self.assertGreater(report.ac_to_hc_ratio, 0)

    def test_too_few_runs(self):
        with self.assertRaises(ConfigurationError):
            benchmark_coders(make_stream([0, 1], qb=2), skewed_model(), runs=4)


if __name__ == '__main__':
    unittest.main()
