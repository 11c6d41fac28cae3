"""
QB x QAM order x scheme sweep

Every row of one QAM order shares one generated signal (seed = base seed +
index of the order in qam_order_list). Each (mode, QB) is quantized once and
every coder of that mode codes the same streams. Row failures are recorded
and the sweep carries on; a roundtrip mismatch aborts it.
"""
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

import config
from budget.link_budget import build_table1
from budget.models import BudgetRow
from entropy.bitstream import Coder
from errors import ConfigurationError, MFHError, RoundtripMismatchError
from exports.report_exporter import ReportExporter
from pipeline.histogram_export import GaussianFit, export_histogram
from pipeline.run_config import RunConfig, parse_scheme, scheme_name
from pipeline.runner import SweepRow, budget_columns, code_streams, measure_evm, stage
from quantization.iq import quantize_iq
from quantization.models import CodewordStream, QuantizerMode
from utils.logger import get_logger
from utils.metrics_tracker import RunMetricsTracker
from waveform.evm import evm_threshold
from waveform.ofdm import generate_ofdm

HISTOGRAM_FILES = {
    QuantizerMode.PCM: config.PCM_HISTOGRAM_CSV_NAME,
    QuantizerMode.DPCM: config.DPCM_HISTOGRAM_CSV_NAME,
}


class SweepResult(BaseModel):
    rows: List[SweepRow]
    table1: List[BudgetRow]
    metadata: Dict
    histograms: Dict[str, GaussianFit] = Field(default_factory=dict)

    @property
    def failed_rows(self) -> List[SweepRow]:
        return [row for row in self.rows if row.failed]

    def operating_points(self) -> Dict[Tuple[int, str], float]:
        return {(row.qam_order, row.scheme): row.effective_qb for row in self.table1}


def _coder_plan(scheme_list: List[str]) -> "OrderedDict[QuantizerMode, List[Coder]]":
    """Coders to run per quantizer mode, in first-appearance order"""
    plan = OrderedDict()
    for scheme in scheme_list:
        mode, coder = parse_scheme(scheme)
        coders = plan.setdefault(mode, [])
        if coder not in coders:
            coders.append(coder)
    return plan


def _error_row(qam_order: int, scheme: str, qb: int, error: Exception,
               metrics: RunMetricsTracker = None) -> SweepRow:
    message = f"{type(error).__name__}: {error}"
    get_logger().log_row_error(qam_order, scheme, qb, message)
    if metrics is not None:
        metrics.record_row(False, type(error).__name__, str(error))
    return SweepRow(qam_order=qam_order, scheme=scheme, qb=qb, error=message)


def _sweep_qam_order(run_config: RunConfig, qam_index: int, qam_order: int,
                     metrics: RunMetricsTracker = None
                     ) -> Tuple[Dict[Tuple[str, int], SweepRow], Dict[QuantizerMode, CodewordStream]]:
    """
    All rows for one QAM order, keyed by (scheme, qb), plus the I streams at
    the largest QB (kept for the first order only).
    """
    logger = get_logger()
    sweep = run_config.sweep
    thresholds = run_config.thresholds()
    plan = _coder_plan(sweep.scheme_list)
    largest_qb = max(sweep.qb_list)
    rows = {}
    histogram_streams = {}

    ofdm = run_config.signal_config(qam_order, run_config.rng_seed + qam_index)
    try:
        with stage('generate', metrics):
            signal = generate_ofdm(ofdm)
    except MFHError as e:
        for scheme in sweep.scheme_list:
            scheme = scheme_name(*parse_scheme(scheme))
            for qb in sweep.qb_list:
                rows[(scheme, qb)] = _error_row(qam_order, scheme, qb, e, metrics)
        return rows, histogram_streams
    logger.log_stage('generate', f"{qam_order}-QAM seed {ofdm.rng_seed}, {ofdm.sample_count} samples")

    for mode, coders in plan.items():
        for qb in sweep.qb_list:
            try:
                quantizer = run_config.quantizer_for(mode, qb)
                with stage('quantize', metrics):
                    streams = quantize_iq(signal.samples, quantizer)
                # coders only pass on streams that decode bit-exactly, so
                # the EVM of the quantizer output is the EVM of every coder
                report = measure_evm(streams, signal, thresholds, metrics)
            except RoundtripMismatchError:
                raise
            except MFHError as e:
                for coder in coders:
                    scheme = scheme_name(mode, coder)
                    rows[(scheme, qb)] = _error_row(qam_order, scheme, qb, e, metrics)
                continue

            if qam_index == 0 and qb == largest_qb:
                histogram_streams[mode] = streams[0]

            for coder in coders:
                scheme = scheme_name(mode, coder)
                try:
                    effective, _ = code_streams(streams, coder, run_config.ac_block_bits, metrics)
                    with stage('budget', metrics):
                        budget = budget_columns(effective, run_config.budget)
                except RoundtripMismatchError:
                    raise
                except MFHError as e:
                    rows[(scheme, qb)] = _error_row(qam_order, scheme, qb, e, metrics)
                    continue

                row = SweepRow(
                    qam_order=qam_order,
                    scheme=scheme,
                    qb=qb,
                    effective_qb=effective,
                    evm_percent=report.evm_rms_percent,
                    passes_threshold=report.passes_threshold,
                    **budget,
                )
                rows[(scheme, qb)] = row
                logger.log_row(qam_order, scheme, qb, effective, row.evm_percent, row.passes_threshold)
                if metrics is not None:
                    metrics.record_row(True)

    return rows, histogram_streams


def select_operating_points(rows: List[SweepRow]) -> "OrderedDict[Tuple[int, str], float]":
    """Smallest effective QBs that still passes the EVM limit, per (QAM order, scheme)"""
    points = OrderedDict()
    for row in rows:
        if row.failed or not row.passes_threshold:
            continue
        key = (row.qam_order, row.scheme)
        if key not in points or row.effective_qb < points[key]:
            points[key] = row.effective_qb
    return points


def _metadata(run_config: RunConfig) -> Dict:
    sweep = run_config.sweep
    thresholds = run_config.thresholds()
    return {
        'rng_seed': run_config.rng_seed,
        'qb_list': list(sweep.qb_list),
        'qam_order_list': list(sweep.qam_order_list),
        'scheme_list': list(sweep.scheme_list),
        'sample_count': run_config.ofdm.sample_count,
        'num_symbols': run_config.ofdm.num_symbols,
        'clip_sigma': run_config.quantizer.clip_sigma,
        'ac_block_bits': run_config.ac_block_bits,
        'evm_thresholds': {str(q): evm_threshold(q, thresholds) for q in sweep.qam_order_list},
    }


def run_sweep(run_config: RunConfig, metrics: RunMetricsTracker = None,
              write_outputs: bool = True) -> SweepResult:
    """
    Run the sweep and (optionally) write fig4a.csv, sweep.json,
    table1.csv/json and the fig3b/fig3c histograms to run_config.output_dir.

    Raises:
        ConfigurationError: no sweep section, invalid lists, or a swept QAM
            order without an EVM threshold
        RoundtripMismatchError: any entropy roundtrip mismatch
    """
    if run_config.sweep is None:
        raise ConfigurationError("Run config has no sweep section")
    run_config.check()
    sweep = run_config.sweep
    logger = get_logger()
    logger.info(
        f"Sweep: {len(sweep.qam_order_list)} QAM orders x {len(sweep.scheme_list)} schemes "
        f"x {len(sweep.qb_list)} QBs, {run_config.max_workers} worker(s)",
        component="Sweep"
    )

    jobs = list(enumerate(sweep.qam_order_list))
    if run_config.max_workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=run_config.max_workers) as executor:
            futures = [executor.submit(_sweep_qam_order, run_config, i, q, metrics) for i, q in jobs]
            results = [future.result() for future in futures]
    else:
        results = [_sweep_qam_order(run_config, i, q, metrics) for i, q in jobs]

    rows = []
    for qam_order, (by_key, _) in zip(sweep.qam_order_list, results):
        for scheme in sweep.scheme_list:
            scheme = scheme_name(*parse_scheme(scheme))
            for qb in sweep.qb_list:
                rows.append(by_key[(scheme, qb)])

    points = select_operating_points(rows)
    table1 = build_table1(points, run_config.budget).rows
    result = SweepResult(rows=rows, table1=table1, metadata=_metadata(run_config))

    if write_outputs:
        histogram_streams = results[0][1] if results else {}
        result = write_sweep_outputs(result, run_config.output_dir, histogram_streams)

    logger.info(f"Sweep finished: {len(rows)} rows, {len(result.failed_rows)} failed", component="Sweep")
    return result


def write_sweep_outputs(result: SweepResult, output_dir: str,
                        histogram_streams: Optional[Dict[QuantizerMode, CodewordStream]] = None) -> SweepResult:
    """Write every sweep artifact; returns the result with histogram fits attached"""
    exporter = ReportExporter(output_dir)
    histograms = {}
    for mode, stream in (histogram_streams or {}).items():
        fit = export_histogram(stream, exporter.resolve(HISTOGRAM_FILES[mode]))
        histograms[mode.value] = fit
    result = result.model_copy(update={'histograms': histograms})

    row_dicts = [row.model_dump() for row in result.rows]
    table1_dicts = [row.model_dump() for row in result.table1]
    exporter.export_sweep(row_dicts)
    exporter.export_table1(table1_dicts)
    exporter.export_json({'metadata': result.metadata, 'table1': table1_dicts},
                         exporter.resolve(config.TABLE1_JSON_NAME))
    exporter.export_json(
        {
            'metadata': result.metadata,
            'rows': row_dicts,
            'table1': table1_dicts,
            'histograms': {mode: fit.model_dump() for mode, fit in histograms.items()},
        },
        exporter.resolve(config.SWEEP_JSON_NAME),
    )
    return result
