"""
Command-line interface for the MFH toolkit

Subcommands: generate, quantize, encode, decode, evm, budget, sweep,
histogram, bench. Exit codes: 0 success, 1 configuration error, 2 stage or
I/O failure (or any failed sweep row), 3 roundtrip mismatch.
"""
import argparse
import json
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

import config
from budget.link_budget import build_table1, table1_consistency, write_budget_csv, write_budget_json
from entropy.arithmetic import arithmetic_encode
from entropy.benchmark import benchmark_coders
from entropy.bitstream import Coder, effective_qbs, read_coded_bitstream, write_coded_bitstream
from entropy.huffman import huffman_build, huffman_encode
from errors import ConfigurationError, MFHError, RoundtripMismatchError, StageError
from exports.report_exporter import ReportExporter
from pipeline.histogram_export import export_histogram
from pipeline.run_config import RunConfig, SweepSpec
from pipeline.runner import check_roundtrip, entropy_decode
from pipeline.sweep import run_sweep
from quantization.histogram import codeword_histogram
from quantization.iq import dequantize_iq, quantize_iq
from quantization.models import ChannelTag, CodewordStream, QuantizerMode
from quantization.stream_io import read_codeword_stream, write_codeword_stream
from utils.logger import get_logger
from utils.metrics_tracker import RunMetricsTracker
from waveform.evm import compute_evm
from waveform.ofdm import demodulate, generate_ofdm
from waveform.signal_io import read_signal, write_signal

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_STAGE = 2
EXIT_ROUNDTRIP = 3

SIDECAR_SUFFIX = '.json'


def _load_run_config(args: argparse.Namespace) -> RunConfig:
    """--config file (or defaults) with --seed and --out-dir applied on top"""
    run_config = RunConfig.load(args.config) if args.config else RunConfig()
    updates = {}
    if args.seed is not None:
        updates['rng_seed'] = args.seed
    if args.out_dir is not None:
        updates['output_dir'] = args.out_dir
    return run_config.model_copy(update=updates) if updates else run_config


def _exporter(run_config: RunConfig) -> ReportExporter:
    return ReportExporter(run_config.output_dir)


def _stream_paths(stem) -> List[Path]:
    stem = Path(stem)
    return [stem.with_name(f"{stem.name}_{tag.value}.mfhq") for tag in ChannelTag]


def _sidecar_path(coded_path) -> Path:
    coded_path = Path(coded_path)
    return coded_path.with_name(coded_path.name + SIDECAR_SUFFIX)


def _write_report(exporter: ReportExporter, fmt: str, name: str, rows: List[dict],
                  columns: List[str], document=None) -> Path:
    if fmt == 'json':
        return exporter.export_json(document if document is not None else rows,
                                    exporter.resolve(f"{name}.json"))
    return exporter.export_csv(rows, columns, exporter.resolve(f"{name}.csv"))


def cmd_generate(args: argparse.Namespace) -> int:
    """Generate an OFDM signal and write <stem>.iq + <stem>.json"""
    run_config = _load_run_config(args)
    updates = {}
    if args.qam is not None:
        updates['qam_order'] = args.qam
    if args.num_symbols is not None:
        updates['num_symbols'] = args.num_symbols
    ofdm = run_config.signal_config().model_copy(update=updates).check()

    signal = generate_ofdm(ofdm)
    stem = args.stem or _exporter(run_config).resolve('signal')
    write_signal(stem, signal)
    return EXIT_OK


def cmd_quantize(args: argparse.Namespace) -> int:
    """Quantize a stored signal into <stem>_I.mfhq and <stem>_Q.mfhq"""
    run_config = _load_run_config(args)
    samples, _ = read_signal(args.signal)
    quantizer = run_config.quantizer_for(QuantizerMode(args.mode), args.qb)
    if not config.SWEEP_QB_MIN <= quantizer.qb <= config.QB_MAX:
        raise ConfigurationError(f"--qb must be in [{config.SWEEP_QB_MIN}, {config.QB_MAX}]")

    streams = quantize_iq(samples, quantizer)
    stem = args.stem or _exporter(run_config).resolve('codewords')
    for path, stream in zip(_stream_paths(stem), streams):
        write_codeword_stream(path, stream)
        print(f"[MFHQ] {stream.channel_tag.value}: {stream.sample_count} codewords, QB={stream.qb} -> {path}")
    return EXIT_OK


def cmd_encode(args: argparse.Namespace) -> int:
    """Entropy-code one .mfhq stream into .mfhc plus a metadata sidecar"""
    run_config = _load_run_config(args)
    stream = read_codeword_stream(args.stream)
    coder = Coder(args.coder)
    model = codeword_histogram(stream)
    if coder == Coder.HUFFMAN:
        bitstream = huffman_encode(stream, huffman_build(model))
    else:
        bitstream = arithmetic_encode(stream, model, run_config.ac_block_bits)

    check_roundtrip(stream, entropy_decode(bitstream), coder)

    out = Path(args.out) if args.out else Path(args.stream).with_suffix('.mfhc')
    write_coded_bitstream(out, bitstream)
    _sidecar_path(out).write_text(
        stream.model_dump_json(exclude={'codewords'}, indent=2), encoding='utf-8'
    )
    print(f"[MFHC] {coder.value}: {effective_qbs(bitstream):.4f} effective QBs "
          f"({effective_qbs(bitstream, include_header=True):.4f} with header) -> {out}")
    return EXIT_OK


def cmd_decode(args: argparse.Namespace) -> int:
    """Decode .mfhc back to .mfhq using the sidecar metadata"""
    bitstream = read_coded_bitstream(args.coded)
    sidecar = _sidecar_path(args.coded)
    metadata = json.loads(sidecar.read_text(encoding='utf-8'))
    codewords = entropy_decode(bitstream)
    stream = CodewordStream.model_validate({**metadata, 'codewords': codewords})

    out = Path(args.out) if args.out else Path(args.coded).with_suffix('.mfhq')
    write_codeword_stream(out, stream)
    print(f"[MFHQ] Decoded {stream.sample_count} codewords -> {out}")
    return EXIT_OK


def cmd_evm(args: argparse.Namespace) -> int:
    """EVM of stored I/Q streams against the signal they were quantized from"""
    run_config = _load_run_config(args)
    _, ofdm = read_signal(args.signal)
    reference = generate_ofdm(ofdm).reference_grid
    streams = [read_codeword_stream(path) for path in _stream_paths(args.streams)]

    grid = demodulate(dequantize_iq(*streams), ofdm)
    report = compute_evm(grid, reference, ofdm.qam_order, run_config.thresholds())
    verdict = {True: 'PASS', False: 'FAIL', None: 'NO THRESHOLD'}[report.passes_threshold]
    print(f"[EVM] {ofdm.qam_order}-QAM: {report.evm_rms_percent:.4f}% [{verdict}]")

    rows = [{'symbol_index': i, 'evm_percent': e} for i, e in enumerate(report.per_symbol_evm)]
    _write_report(_exporter(run_config), args.format, 'evm', rows,
                  ReportExporter.EVM_COLUMNS, report.model_dump(mode='json'))
    return EXIT_OK


def cmd_budget(args: argparse.Namespace) -> int:
    """Channel counts and rates for given effective QBs, or the quoted operating-point check"""
    run_config = _load_run_config(args)
    exporter = _exporter(run_config)

    if args.table1:
        consistency = table1_consistency(run_config.budget)
        rows = [
            {'qam_order': qam, 'scheme': scheme, 'effective_qb': entry['implied_qb'],
             'channels': entry['channels'], 'rate_tbps': entry['rate_tbps']}
            for (qam, scheme), entry in consistency.items()
        ]
        _write_report(exporter, args.format, 'table1_consistency', rows, ReportExporter.TABLE1_COLUMNS)
        return EXIT_OK

    if not args.qb:
        raise ConfigurationError("budget needs --qb values or --table1")
    report = build_table1({(0, f"QB={qb}"): qb for qb in args.qb}, run_config.budget)
    for row in report.rows:
        print(f"[BUDGET] {row.effective_qb:.4f} QBs -> {row.channels} channels, {row.rate_tbps:.3f} Tbit/s")
    if args.format == 'json':
        write_budget_json(report, exporter.resolve('budget.json'))
    else:
        write_budget_csv(report, exporter.resolve('budget.csv'))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    """Full sweep; nonzero exit if any row failed"""
    run_config = _load_run_config(args)
    if args.qb or args.qam or args.schemes:
        base = run_config.sweep
        run_config = run_config.model_copy(update={'sweep': SweepSpec(
            qb_list=args.qb or (base.qb_list if base else list(range(config.SWEEP_QB_MIN, config.QB_MAX))),
            qam_order_list=args.qam or (base.qam_order_list if base else [run_config.ofdm.qam_order]),
            scheme_list=args.schemes or (base.scheme_list if base else ['PCM', 'DPCM']),
        )})

    metrics = RunMetricsTracker()
    try:
        result = run_sweep(run_config, metrics)
    finally:
        metrics.save()

    for key, qb in result.operating_points().items():
        print(f"[TABLE1] {key[0]}-QAM {key[1]}: {qb:.4f} QBs")
    if result.failed_rows:
        print(f"[ERROR] {len(result.failed_rows)} of {len(result.rows)} rows failed")
        return EXIT_STAGE
    return EXIT_OK


def cmd_histogram(args: argparse.Namespace) -> int:
    """Codeword histogram CSV plus the moment fit"""
    run_config = _load_run_config(args)
    stream = read_codeword_stream(args.stream)
    out = args.out or _exporter(run_config).resolve(Path(args.stream).stem + '_histogram.csv')
    fit = export_histogram(stream, out)
    print(f"[HISTOGRAM] mean {fit.mean:.6g}, sigma {fit.sigma:.6g}, skewness {fit.skewness:.4f}, "
          f"excess kurtosis {fit.excess_kurtosis:.4f}, peak {fit.peak_probability:.6f}")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    """HC vs AC encode+decode timing on one stream"""
    run_config = _load_run_config(args)
    stream = read_codeword_stream(args.stream)
    report = benchmark_coders(stream, codeword_histogram(stream), args.runs, run_config.ac_block_bits)
    rows = [timing.model_dump() for timing in report.timings.values()]
    print(f"[BENCH] {report.symbol_count} symbols, AC/HC time ratio {report.ac_to_hc_ratio:.2f}")
    _write_report(_exporter(run_config), args.format, 'bench', rows,
                  ReportExporter.BENCH_COLUMNS, report.model_dump(mode='json'))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='mfh', description='Mobile fronthaul compression toolkit')
    parser.add_argument('--config', help='Run config JSON file')
    parser.add_argument('--seed', type=int, help='Override the base RNG seed')
    parser.add_argument('--out-dir', help='Output directory')
    parser.add_argument('--format', choices=['csv', 'json'], default='csv', help='Report format')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('generate', help='Generate an OFDM signal')
    p.add_argument('--qam', type=int, help='QAM order')
    p.add_argument('--num-symbols', type=int, help='OFDM symbols to generate')
    p.add_argument('--stem', help='Output path stem (<stem>.iq, <stem>.json)')
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser('quantize', help='Quantize a signal into I/Q codeword streams')
    p.add_argument('--signal', required=True, help='Signal path stem')
    p.add_argument('--qb', type=int, required=True, help='Bits per codeword')
    p.add_argument('--mode', choices=[m.value for m in QuantizerMode], default='PCM')
    p.add_argument('--stem', help='Output stem (<stem>_I.mfhq, <stem>_Q.mfhq)')
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser('encode', help='Entropy-code a codeword stream')
    p.add_argument('--stream', required=True, help='.mfhq file')
    p.add_argument('--coder', choices=[Coder.HUFFMAN.value, Coder.ARITHMETIC.value], default='AC')
    p.add_argument('--out', help='.mfhc output path')
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser('decode', help='Decode a coded stream back to .mfhq')
    p.add_argument('--coded', required=True, help='.mfhc file (with its .mfhc.json sidecar)')
    p.add_argument('--out', help='.mfhq output path')
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser('evm', help='EVM of quantized streams against their signal')
    p.add_argument('--signal', required=True, help='Signal path stem')
    p.add_argument('--streams', required=True, help='Codeword stream stem')
    p.set_defaults(func=cmd_evm)

    p = sub.add_parser('budget', help='Link budget for effective QBs')
    p.add_argument('--qb', type=float, nargs='+', help='Effective QBs')
    p.add_argument('--table1', action='store_true', help='Check the quoted operating-point cells')
    p.set_defaults(func=cmd_budget)

    p = sub.add_parser('sweep', help='QB x QAM x scheme sweep')
    p.add_argument('--qb', type=int, nargs='+', help='QB list')
    p.add_argument('--qam', type=int, nargs='+', help='QAM order list')
    p.add_argument('--schemes', nargs='+', help='Schemes, e.g. PCM DPCM+AC')
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser('histogram', help='Export a codeword histogram')
    p.add_argument('--stream', required=True, help='.mfhq file')
    p.add_argument('--out', help='CSV output path')
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser('bench', help='Time HC against AC')
    p.add_argument('--stream', required=True, help='.mfhq file')
    p.add_argument('--runs', type=int, default=config.BENCH_RUNS)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger = get_logger()
    try:
        return args.func(args)
    except RoundtripMismatchError as e:
        logger.critical(str(e), component="CLI")
        print(f"[ERROR] {e}")
        return EXIT_ROUNDTRIP
    except (ConfigurationError, ValidationError) as e:
        logger.error(str(e), component="CLI")
        print(f"[ERROR] Configuration: {e}")
        return EXIT_CONFIG
    except (StageError, MFHError, OSError) as e:
        logger.error(f"{args.command} failed: {e}", component="CLI", exc_info=True)
        print(f"[ERROR] {e}")
        return EXIT_STAGE
