"""
Tests for the end-to-end pipeline, the sweep harness, histogram export and
the command-line interface.

Outputs go to temp directories; signals are kept short (min_sample_count=0)
except where compression statistics need the full sample budget.
"""
import csv
import json
import shutil
import sys
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import numpy as np

# Ensure src/ is on path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from budget import channel_count, cpri_equivalent_rate  # noqa: E402
from commands.cli import EXIT_CONFIG, EXIT_OK, EXIT_ROUNDTRIP, EXIT_STAGE, main  # noqa: E402
from entropy.bitstream import Coder  # noqa: E402
from errors import ConfigurationError, QuantizerInputError, RoundtripMismatchError  # noqa: E402
from pipeline import (  # noqa: E402
    RunConfig, SweepSpec, export_histogram, parse_scheme, run_pipeline, run_sweep,
    scheme_name, select_operating_points,
)
from pipeline import runner as pipeline_runner  # noqa: E402
from pipeline.runner import SweepRow  # noqa: E402
from quantization import QuantizerConfig, QuantizerMode, codeword_histogram, quantize_iq  # noqa: E402
from utils.metrics_tracker import RunMetricsTracker  # noqa: E402
from waveform import OfdmConfig, generate_ofdm  # noqa: E402

OUTPUT_FILES = ('fig4a.csv', 'sweep.json', 'table1.csv', 'table1.json', 'fig3b.csv', 'fig3c.csv')


def small_config(output_dir, num_symbols=4, qam_order=16, **updates) -> RunConfig:
    return RunConfig(
        ofdm=OfdmConfig(num_symbols=num_symbols, qam_order=qam_order),
        output_dir=str(output_dir),
        min_sample_count=0,
        **updates,
    )


def corrupting_decode(bitstream):
    """Real decode with the first codeword flipped"""
    codewords = pipeline_runner.arithmetic_decode(bitstream) if bitstream.coder == Coder.ARITHMETIC \
        else pipeline_runner.huffman_decode(bitstream)
    codewords = codewords.copy()
    codewords[0] ^= 1
    return codewords


class TempDirTestCase(unittest.TestCase):

    def setUp(self):
        self.temp_dir = Path(tempfile.mkdtemp())

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)


class TestRunConfig(TempDirTestCase):

    def test_parse_scheme(self):
        self.assertEqual(parse_scheme('DPCM+AC'), (QuantizerMode.DPCM, Coder.ARITHMETIC))
        self.assertEqual(parse_scheme('pcm'), (QuantizerMode.PCM, Coder.NONE))
        self.assertEqual(scheme_name(QuantizerMode.PCM, Coder.HUFFMAN), 'PCM+HC')
        for bad in ('ADPCM', 'PCM+XX', 'PCM+NONE'):
            with self.assertRaises(ConfigurationError):
                parse_scheme(bad)

    def test_load(self):
        path = self.temp_dir / 'run.json'
        path.write_text(json.dumps({
            'ofdm': {'num_symbols': 7, 'qam_order': 4096},
            'quantizer': {'qb': 12, 'mode': 'DPCM', 'predictor_order': 2, 'adaptation_step': 0.02},
            'coder': 'AC',
            'evm_thresholds': {'4096': 0.5},
            'rng_seed': 9,
        }), encoding='utf-8')
        run_config = RunConfig.load(path)
        self.assertEqual(run_config.ofdm.num_symbols, 7)
        self.assertEqual(run_config.quantizer.predictor_order, 2)
        self.assertEqual(run_config.coder, Coder.ARITHMETIC)
        self.assertEqual(run_config.thresholds()[4096], 0.5)
        self.assertEqual(run_config.signal_config().rng_seed, 9)

    def test_load_errors(self):
        with self.assertRaises(ConfigurationError):
            RunConfig.load(self.temp_dir / 'missing.json')
        bad = self.temp_dir / 'bad.json'
        bad.write_text('{"ofdm": {"num_symbols": "many"}}', encoding='utf-8')
        with self.assertRaises(ConfigurationError):
            RunConfig.load(bad)

    def test_sample_budget(self):
        with self.assertRaises(ConfigurationError):
            RunConfig(ofdm=OfdmConfig(num_symbols=10)).check()
        RunConfig(ofdm=OfdmConfig(num_symbols=100)).check()

    def test_sweep_qb_range(self):
        sweep = SweepSpec(qb_list=[1, 8], qam_order_list=[16], scheme_list=['PCM'])
        with self.assertRaises(ConfigurationError):
            small_config(self.temp_dir, sweep=sweep).check()

    def test_empty_sweep_lists(self):
        sweep = SweepSpec(qb_list=[], qam_order_list=[16], scheme_list=['PCM'])
        with self.assertRaises(ConfigurationError):
            small_config(self.temp_dir, sweep=sweep).check()

    def test_quantizer_for(self):
        run_config = small_config(self.temp_dir, quantizer=QuantizerConfig.pcm(15, clip_sigma=5.0))
        dpcm = run_config.quantizer_for(QuantizerMode.DPCM, 6)
        self.assertEqual((dpcm.mode, dpcm.qb, dpcm.clip_sigma), (QuantizerMode.DPCM, 6, 5.0))
        pcm = run_config.quantizer_for(QuantizerMode.PCM, 9)
        self.assertEqual((pcm.mode, pcm.qb, pcm.clip_sigma), (QuantizerMode.PCM, 9, 5.0))


class TestRunPipeline(TempDirTestCase):

    def test_pcm15_uncoded(self):
        run_config = small_config(self.temp_dir, num_symbols=10,
                                  quantizer=QuantizerConfig.pcm(15, clip_sigma=6.0))
        row = run_pipeline(run_config)
        self.assertLess(row.evm_percent, 0.1)
        self.assertTrue(row.passes_threshold)
        self.assertEqual(row.scheme, 'PCM')
        self.assertEqual(row.effective_qb, 15.0)
        self.assertEqual(row.channels, channel_count(15.0))

    def test_coders_leave_evm_unchanged(self):
        rows = {
            coder: run_pipeline(small_config(self.temp_dir, quantizer=QuantizerConfig.pcm(10), coder=coder))
            for coder in (Coder.NONE, Coder.HUFFMAN, Coder.ARITHMETIC)
        }
        evms = {row.evm_percent for row in rows.values()}
        self.assertEqual(len(evms), 1)
        self.assertLess(rows[Coder.HUFFMAN].effective_qb, 10)
        self.assertLessEqual(rows[Coder.ARITHMETIC].effective_qb, rows[Coder.HUFFMAN].effective_qb + 0.02)

    def test_dpcm_ac_4096_qam(self):
        run_config = small_config(
            self.temp_dir, num_symbols=10, qam_order=4096,
            quantizer=QuantizerConfig.dpcm(15, clip_sigma=6.0), coder=Coder.ARITHMETIC,
            evm_thresholds={4096: 0.5},
        )
        row = run_pipeline(run_config)
        self.assertEqual(row.scheme, 'DPCM+AC')
        self.assertTrue(row.passes_threshold)
        self.assertLess(row.effective_qb, 15)

    def test_4096_without_threshold(self):
        run_config = small_config(self.temp_dir, qam_order=4096)
        with patch.dict('config.EVM_THRESHOLD_OVERRIDES', {}, clear=True):
            with self.assertRaises(ConfigurationError):
                run_pipeline(run_config)

    def test_roundtrip_mismatch_is_fatal(self):
        run_config = small_config(self.temp_dir, quantizer=QuantizerConfig.pcm(8), coder=Coder.HUFFMAN)
        with patch('pipeline.runner.entropy_decode', side_effect=corrupting_decode):
            with self.assertRaises(RoundtripMismatchError):
                run_pipeline(run_config)


class TestCompressionCorridor(TempDirTestCase):

    def test_pcm15_savings(self):
        """Full sample budget: HC and AC savings on a 15-bit PCM stream"""
        run_config = RunConfig(
            ofdm=OfdmConfig(num_symbols=100, qam_order=16),
            quantizer=QuantizerConfig.pcm(15, clip_sigma=6.0),
            sweep=SweepSpec(qb_list=[15], qam_order_list=[16], scheme_list=['PCM', 'PCM+HC', 'PCM+AC']),
            output_dir=str(self.temp_dir),
        )
        result = run_sweep(run_config, write_outputs=False)
        rows = {row.scheme: row for row in result.rows}
        hc = rows['PCM+HC'].effective_qb
        ac = rows['PCM+AC'].effective_qb

        self.assertEqual(rows['PCM'].effective_qb, 15.0)
        self.assertGreaterEqual(hc, 13.0)
        self.assertLessEqual(hc, 13.9)
        self.assertLessEqual(ac, hc)
        self.assertGreaterEqual(15 - hc, 0.9)
        self.assertLessEqual(15 - hc, 1.8)
        self.assertGreaterEqual(15 - ac, 15 - hc)
        self.assertEqual(len({row.evm_percent for row in result.rows}), 1)


class TestQuantizationQuality(unittest.TestCase):
    """Full sample budget so the predictor's start-up transient stays small"""

    QAM_ORDERS = (4, 16, 64, 256, 1024, 4096)

    @classmethod
    def setUpClass(cls):
        cls.temp_dir = Path(tempfile.mkdtemp())
        run_config = RunConfig(
            ofdm=OfdmConfig(num_symbols=100, qam_order=256),
            sweep=SweepSpec(qb_list=list(range(4, 16)), qam_order_list=list(cls.QAM_ORDERS),
                            scheme_list=['PCM', 'DPCM']),
            evm_thresholds={1024: 1.0, 4096: 0.5},
            output_dir=str(cls.temp_dir),
            max_workers=len(cls.QAM_ORDERS),
        )
        cls.result = run_sweep(run_config, write_outputs=False)

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls.temp_dir, ignore_errors=True)

    def _evm(self, qam_order, scheme, qb):
        for row in self.result.rows:
            if (row.qam_order, row.scheme, row.qb) == (qam_order, scheme, qb):
                return row.evm_percent
        raise KeyError((qam_order, scheme, qb))

    def test_no_failed_rows(self):
        self.assertEqual(self.result.failed_rows, [])
        self.assertEqual(len(self.result.rows), len(self.QAM_ORDERS) * 2 * 12)

    def test_evm_non_increasing_in_qb(self):
        for qam_order in self.QAM_ORDERS:
            for scheme in ('PCM', 'DPCM'):
                evms = [self._evm(qam_order, scheme, qb) for qb in range(4, 16)]
                for low, high in zip(evms, evms[1:]):
                    self.assertLessEqual(high, low + 1e-9, f"{qam_order}-QAM {scheme}: {evms}")

    def test_dpcm_beats_pcm_at_low_qb(self):
        for qam_order in self.QAM_ORDERS:
            for qb in range(4, 9):
                self.assertLess(self._evm(qam_order, 'DPCM', qb), self._evm(qam_order, 'PCM', qb),
                                f"{qam_order}-QAM qb={qb}")

    def test_dpcm_residual_entropy_close_to_pcm(self):
        signal = generate_ofdm(OfdmConfig(num_symbols=100, qam_order=256))
        pcm_i, _ = quantize_iq(signal.samples, QuantizerConfig.pcm(12))
        dpcm_i, _ = quantize_iq(signal.samples, QuantizerConfig.dpcm(12))
        self.assertLessEqual(codeword_histogram(dpcm_i).entropy(), codeword_histogram(pcm_i).entropy() + 0.1)


class TestSweep(TempDirTestCase):

    def _config(self, output_dir, max_workers=1):
        return small_config(
            output_dir,
            max_workers=max_workers,
            sweep=SweepSpec(qb_list=[4, 8], qam_order_list=[16, 64], scheme_list=['PCM', 'PCM+HC', 'DPCM+AC']),
        )

    def test_row_order_and_budget_columns(self):
        result = run_sweep(self._config(self.temp_dir / 'out'), write_outputs=False)
        keys = [(row.qam_order, row.scheme, row.qb) for row in result.rows]
        self.assertEqual(keys, [
            (q, s, b) for q in (16, 64) for s in ('PCM', 'PCM+HC', 'DPCM+AC') for b in (4, 8)
        ])
        for row in result.rows:
            self.assertEqual(row.channels, channel_count(row.effective_qb))
            self.assertEqual(row.rate_tbps, cpri_equivalent_rate(row.effective_qb))

    def test_operating_points_feed_table1(self):
        result = run_sweep(self._config(self.temp_dir / 'out'), write_outputs=False)
        points = select_operating_points(result.rows)
        self.assertEqual(result.operating_points(), dict(points))
        for (qam_order, scheme), qb in points.items():
            passing = [r.effective_qb for r in result.rows
                       if (r.qam_order, r.scheme) == (qam_order, scheme) and r.passes_threshold]
            self.assertEqual(qb, min(passing))

    def test_outputs_byte_identical(self):
        """Reruns and parallel runs write the same bytes"""
        dirs = [self.temp_dir / name for name in ('a', 'b', 'c')]
        run_sweep(self._config(dirs[0]))
        run_sweep(self._config(dirs[1]))
        run_sweep(self._config(dirs[2], max_workers=2))
        for name in OUTPUT_FILES:
            first = (dirs[0] / name).read_bytes()
            self.assertEqual((dirs[1] / name).read_bytes(), first, name)
            self.assertEqual((dirs[2] / name).read_bytes(), first, name)

    def test_output_structure(self):
        out = self.temp_dir / 'out'
        result = run_sweep(self._config(out))
        with open(out / 'fig4a.csv', newline='', encoding='utf-8') as f:
            rows = list(csv.DictReader(f))
        self.assertEqual(len(rows), 12)
        self.assertEqual(rows[0]['scheme'], 'PCM')

        document = json.loads((out / 'sweep.json').read_text(encoding='utf-8'))
        self.assertEqual(document['metadata']['rng_seed'], result.metadata['rng_seed'])
        self.assertEqual(document['metadata']['evm_thresholds'], {'16': 12.5, '64': 8.0})
        self.assertEqual(set(document['histograms']), {'PCM', 'DPCM'})

        with open(out / 'fig3b.csv', newline='', encoding='utf-8') as f:
            self.assertEqual(len(list(csv.reader(f))), 1 + 2 ** 8)

    def test_row_errors_are_recorded(self):
        def flaky_quantize(samples, quantizer):
            if quantizer.qb == 4:
                raise QuantizerInputError("boom")
            return quantize_iq(samples, quantizer)

        with patch('pipeline.sweep.quantize_iq', side_effect=flaky_quantize):
            result = run_sweep(self._config(self.temp_dir / 'out'), write_outputs=False)

        failed = result.failed_rows
        self.assertEqual(len(failed), 6)
        self.assertTrue(all(row.qb == 4 for row in failed))
        self.assertIn('quantize', failed[0].error)
        self.assertIn('boom', failed[0].error)
        self.assertTrue(all(row.evm_percent is not None for row in result.rows if row.qb == 8))

    def test_roundtrip_mismatch_aborts(self):
        with patch('pipeline.runner.entropy_decode', side_effect=corrupting_decode):
            with self.assertRaises(RoundtripMismatchError):
                run_sweep(self._config(self.temp_dir / 'out'), write_outputs=False)

    def test_unset_threshold_rejected_up_front(self):
        run_config = small_config(
            self.temp_dir,
            sweep=SweepSpec(qb_list=[8], qam_order_list=[16, 4096], scheme_list=['PCM']),
        )
        with patch.dict('config.EVM_THRESHOLD_OVERRIDES', {}, clear=True):
            with self.assertRaises(ConfigurationError):
                run_sweep(run_config)

    def test_missing_sweep_section(self):
        with self.assertRaises(ConfigurationError):
            run_sweep(small_config(self.temp_dir))

    def test_select_operating_points_skips_failures(self):
        rows = [
            SweepRow(qam_order=16, scheme='PCM+AC', qb=6, effective_qb=4.2, passes_threshold=False),
            SweepRow(qam_order=16, scheme='PCM+AC', qb=8, effective_qb=5.9, passes_threshold=True),
            SweepRow(qam_order=16, scheme='PCM+AC', qb=10, effective_qb=7.8, passes_threshold=True),
            SweepRow(qam_order=16, scheme='PCM+AC', qb=4, error='StageError: x'),
        ]
        self.assertEqual(dict(select_operating_points(rows)), {(16, 'PCM+AC'): 5.9})


class TestRunMetrics(TempDirTestCase):

    def test_pipeline_stage_timings(self):
        metrics = RunMetricsTracker(self.temp_dir / 'run_metrics.json')
        run_pipeline(small_config(self.temp_dir, quantizer=QuantizerConfig.pcm(8), coder=Coder.HUFFMAN), metrics)
        stages = metrics.get_stage_seconds()
        for name in ('generate', 'quantize', 'encode', 'decode', 'dequantize', 'demodulate', 'evm', 'budget'):
            self.assertIn(name, stages)
            self.assertGreaterEqual(stages[name], 0.0)

        metrics.save()
        saved = json.loads((self.temp_dir / 'run_metrics.json').read_text(encoding='utf-8'))
        self.assertEqual(saved['stages']['quantize']['count'], 1)
        self.assertIn('elapsed_seconds', saved)

    def test_sweep_row_outcomes(self):
        def flaky_quantize(samples, quantizer):
            if quantizer.qb == 4:
                raise QuantizerInputError("boom")
            return quantize_iq(samples, quantizer)

        metrics = RunMetricsTracker(self.temp_dir / 'run_metrics.json')
        run_config = small_config(
            self.temp_dir, sweep=SweepSpec(qb_list=[4, 8], qam_order_list=[16], scheme_list=['PCM']),
        )
        with patch('pipeline.sweep.quantize_iq', side_effect=flaky_quantize):
            run_sweep(run_config, metrics, write_outputs=False)

        summary = metrics.get_summary()
        self.assertEqual(summary['rows'], {'total': 2, 'success': 1, 'failed': 1})
        self.assertEqual(summary['errors']['by_type'], {'StageError': 1})


class TestHistogramExport(TempDirTestCase):

    def setUp(self):
        super().setUp()
        signal = generate_ofdm(OfdmConfig(num_symbols=10))
        self.pcm_i, _ = quantize_iq(signal.samples, QuantizerConfig.pcm(15))

    def test_pcm15_histogram(self):
        path = self.temp_dir / 'hist.csv'
        fit = export_histogram(self.pcm_i, path)
        self.assertLess(abs(fit.skewness), 0.1)
        self.assertLess(abs(fit.mean), 0.05 * fit.sigma)

        with open(path, newline='', encoding='utf-8') as f:
            rows = list(csv.DictReader(f))
        self.assertEqual(len(rows), 2 ** 15)
        self.assertEqual(sum(int(r['count']) for r in rows), self.pcm_i.sample_count)
        self.assertAlmostEqual(sum(float(r['probability']) for r in rows), 1.0, places=9)

    def test_empty_path(self):
        with self.assertRaises(OSError):
            export_histogram(self.pcm_i, '')

    def test_empty_stream(self):
        empty = self.pcm_i.with_codewords(np.empty(0, dtype=np.uint32))
        with self.assertRaises(QuantizerInputError):
            export_histogram(empty, self.temp_dir / 'empty.csv')


class TestCli(TempDirTestCase):

    def _write_config(self, **fields):
        document = {'ofdm': {'num_symbols': 4, 'qam_order': 16}, 'min_sample_count': 0}
        document.update(fields)
        path = self.temp_dir / 'run.json'
        path.write_text(json.dumps(document), encoding='utf-8')
        return str(path)

    def _main(self, *argv):
        return main(['--out-dir', str(self.temp_dir), *argv])

    def test_signal_to_evm_flow(self):
        sig = str(self.temp_dir / 'sig')
        cw = self.temp_dir / 'cw'
        self.assertEqual(self._main('generate', '--qam', '64', '--num-symbols', '3', '--stem', sig), EXIT_OK)
        self.assertEqual(
            self._main('quantize', '--signal', sig, '--qb', '10', '--mode', 'DPCM', '--stem', str(cw)), EXIT_OK
        )
        for tag, coder in (('I', 'HC'), ('Q', 'AC')):
            stream = self.temp_dir / f'cw_{tag}.mfhq'
            self.assertEqual(self._main('encode', '--stream', str(stream), '--coder', coder), EXIT_OK)
            coded = self.temp_dir / f'cw_{tag}.mfhc'
            self.assertTrue((self.temp_dir / f'cw_{tag}.mfhc.json').exists())
            decoded = self.temp_dir / f'dec_{tag}.mfhq'
            self.assertEqual(self._main('decode', '--coded', str(coded), '--out', str(decoded)), EXIT_OK)
            self.assertEqual(decoded.read_bytes(), stream.read_bytes())

        self.assertEqual(self._main('evm', '--signal', sig, '--streams', str(self.temp_dir / 'dec')), EXIT_OK)
        with open(self.temp_dir / 'evm.csv', newline='', encoding='utf-8') as f:
            self.assertEqual(len(list(csv.reader(f))), 1 + 3)

    def test_budget(self):
        self.assertEqual(self._main('budget', '--qb', '7.5385', '15'), EXIT_OK)
        with open(self.temp_dir / 'budget.csv', newline='', encoding='utf-8') as f:
            rows = list(csv.DictReader(f))
        self.assertEqual([r['channels'] for r in rows], ['330', '166'])

    def test_budget_table1_json(self):
        self.assertEqual(self._main('--format', 'json', 'budget', '--table1'), EXIT_OK)
        document = json.loads((self.temp_dir / 'table1_consistency.json').read_text(encoding='utf-8'))
        self.assertEqual(len(document), 18)

    def test_histogram_and_bench(self):
        sig = str(self.temp_dir / 'sig')
        self._main('generate', '--num-symbols', '2', '--stem', sig)
        self._main('quantize', '--signal', sig, '--qb', '8', '--stem', str(self.temp_dir / 'cw'))
        stream = str(self.temp_dir / 'cw_I.mfhq')
        self.assertEqual(self._main('histogram', '--stream', stream), EXIT_OK)
        self.assertTrue((self.temp_dir / 'cw_I_histogram.csv').exists())
        self.assertEqual(self._main('bench', '--stream', stream, '--runs', '5'), EXIT_OK)
        self.assertTrue((self.temp_dir / 'bench.csv').exists())

    def test_sweep(self):
        config_path = self._write_config()
        code = self._main('--config', config_path, 'sweep', '--qb', '6', '10', '--qam', '16', '--schemes', 'PCM', 'PCM+AC')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue((self.temp_dir / 'fig4a.csv').exists())
        self.assertTrue((self.temp_dir / 'table1.csv').exists())

    def test_configuration_error_exit(self):
        self.assertEqual(self._main('--config', str(self.temp_dir / 'missing.json'), 'budget', '--qb', '8'),
                         EXIT_CONFIG)
        sig = str(self.temp_dir / 'sig')
        self._main('generate', '--num-symbols', '1', '--stem', sig)
        self.assertEqual(self._main('quantize', '--signal', sig, '--qb', '1'), EXIT_CONFIG)

    def test_stage_failure_exit(self):
        self.assertEqual(self._main('histogram', '--stream', str(self.temp_dir / 'nope.mfhq')), EXIT_STAGE)

    def test_corrupt_coded_file_exit(self):
        sig = str(self.temp_dir / 'sig')
        self._main('generate', '--num-symbols', '1', '--stem', sig)
        self._main('quantize', '--signal', sig, '--qb', '8', '--stem', str(self.temp_dir / 'cw'))
        self.assertEqual(self._main('encode', '--stream', str(self.temp_dir / 'cw_I.mfhq'), '--coder', 'HC'),
                         EXIT_OK)
        coded = self.temp_dir / 'cw_I.mfhc'
        data = bytearray(coded.read_bytes())
        data[19:23] = (0xFFFF).to_bytes(4, 'big')
        coded.write_bytes(bytes(data))
        self.assertEqual(self._main('decode', '--coded', str(coded)), EXIT_STAGE)

    def test_failed_sweep_row_exit(self):
        def flaky_quantize(samples, quantizer):
            if quantizer.qb == 6:
                raise QuantizerInputError("boom")
            return quantize_iq(samples, quantizer)

        config_path = self._write_config()
        with patch('pipeline.sweep.quantize_iq', side_effect=flaky_quantize):
            code = self._main('--config', config_path, 'sweep', '--qb', '6', '10', '--qam', '16', '--schemes', 'PCM')
        self.assertEqual(code, EXIT_STAGE)

    def test_roundtrip_exit(self):
        sig = str(self.temp_dir / 'sig')
        self._main('generate', '--num-symbols', '1', '--stem', sig)
        self._main('quantize', '--signal', sig, '--qb', '8', '--stem', str(self.temp_dir / 'cw'))
        with patch('commands.cli.entropy_decode', side_effect=corrupting_decode):
            code = self._main('encode', '--stream', str(self.temp_dir / 'cw_I.mfhq'))
        self.assertEqual(code, EXIT_ROUNDTRIP)

if __name__ == '__main__':
    unittest.main()
