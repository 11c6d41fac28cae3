"""
Fronthaul link budget: supported 100 MHz carriers and per-transceiver rate

    channels = C * bits * cores / (fs * iq * QB * mimo * line_coding) * (1 - fec)
    rate     = C * bits * cores * reference_qb / QB  [bit/s], scaled by (1 - fec)

Channel counts round half away from zero.
"""
from decimal import Decimal, ROUND_HALF_UP
from pathlib import Path
from typing import Dict, Mapping, Tuple

from budget.models import BudgetParams, BudgetReport, BudgetRow
from errors import ConfigurationError
from exports.report_exporter import ReportExporter

# Operating points quoted for the 28 GBd 16-QAM 6-core system: (qam, scheme) -> (channels, Tbit/s)
PUBLISHED_TABLE1: Dict[Tuple[int, str], Tuple[int, float]] = {
    (4, 'DPCM'): (829, 3.36),
    (4, 'DPCM+HC'): (864, 3.50),
    (4, 'DPCM+AC'): (921, 3.73),
    (16, 'DPCM'): (621, 2.52),
    (16, 'DPCM+HC'): (668, 2.71),
    (16, 'DPCM+AC'): (698, 2.83),
    (64, 'DPCM'): (497, 2.02),
    (64, 'DPCM+HC'): (608, 2.47),
    (64, 'DPCM+AC'): (622, 2.52),
    (256, 'DPCM'): (355, 1.44),
    (256, 'DPCM+HC'): (440, 1.78),
    (256, 'DPCM+AC'): (451, 1.83),
    (1024, 'DPCM'): (311, 1.26),
    (1024, 'DPCM+HC'): (376, 1.53),
    (1024, 'DPCM+AC'): (378, 1.53),
    (4096, 'DPCM'): (276, 1.12),
    (4096, 'DPCM+HC'): (326, 1.32),
    (4096, 'DPCM+AC'): (330, 1.34),
}


def _round_half_away(value: float) -> int:
    return int(Decimal(repr(value)).quantize(Decimal('1'), rounding=ROUND_HALF_UP))


def _check_qb(qb: float):
    if not qb > 0:
        raise ConfigurationError(f"Effective QBs must be positive, got {qb}")


def _raw_channels(qb: float, params: BudgetParams) -> float:
    per_channel = (params.sample_rate_per_channel * 1e9 * params.iq_factor * qb
                   * params.mimo_overhead * params.line_coding_overhead)
    return params.transport_capacity / per_channel


def channel_count(qb: float, params: BudgetParams = None) -> int:
    """
    Raises:
        ConfigurationError: non-positive QBs or invalid parameters
    """
    params = (params or BudgetParams()).check()
    _check_qb(qb)
    return _round_half_away(_raw_channels(qb, params) * (1.0 - params.fec_overhead))


def cpri_equivalent_rate(qb: float, params: BudgetParams = None) -> float:
    """Transceiver rate in Tbit/s"""
    params = (params or BudgetParams()).check()
    _check_qb(qb)
    raw = params.transport_capacity * params.reference_qb / qb
    return raw / 1e12 * (1.0 - params.fec_overhead)


def invert_channel_count(channels: float, params: BudgetParams = None) -> float:
    """Effective QBs at which the (unrounded, FEC-free) formula gives `channels`"""
    params = (params or BudgetParams()).check()
    if not channels > 0:
        raise ConfigurationError(f"Channel count must be positive, got {channels}")
    return _raw_channels(1.0, params) / channels


def build_table1(effective_qbs: Mapping[Tuple[int, str], float],
                 params: BudgetParams = None) -> BudgetReport:
    """
    Channel count and rate for each (qam_order, scheme) operating point.

    Raises:
        ConfigurationError: naming the offending row
    """
    params = (params or BudgetParams()).check()
    rows = []
    for (qam_order, scheme), qb in effective_qbs.items():
        try:
            _check_qb(qb)
        except ConfigurationError as e:
            raise ConfigurationError(f"Row ({qam_order}-QAM, {scheme}): {e}") from None
        rows.append(BudgetRow(
            qam_order=qam_order,
            scheme=scheme,
            effective_qb=qb,
            channels=channel_count(qb, params),
            rate_tbps=cpri_equivalent_rate(qb, params),
        ))
    return BudgetReport(params=params, rows=rows)


def table1_consistency(params: BudgetParams = None) -> Dict[Tuple[int, str], Dict[str, float]]:
    """
    For each quoted operating point, the QBs implied by its channel count and
    the rate those QBs give back.
    """
    params = (params or BudgetParams()).check()
    report = {}
    for key, (channels, rate) in PUBLISHED_TABLE1.items():
        qb = invert_channel_count(channels, params)
        report[key] = {
            'published_channels': channels,
            'published_rate_tbps': rate,
            'implied_qb': qb,
            'channels': channel_count(qb, params),
            'rate_tbps': cpri_equivalent_rate(qb, params),
        }
    return report


def write_budget_csv(report: BudgetReport, path) -> Path:
    return ReportExporter().export_table1([row.model_dump() for row in report.rows], Path(path))


def write_budget_json(report: BudgetReport, path) -> Path:
    return ReportExporter().export_json(report.model_dump(mode='json'), Path(path))
