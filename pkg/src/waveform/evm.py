"""
Error vector magnitude measurement and thresholds
"""
from typing import Mapping, Optional

import numpy as np

import config
from errors import ConfigurationError, EvmInputError, ThresholdUnsetError
from waveform.models import EvmReport
from waveform.qam import qam_demap


def evm_threshold(qam_order: int, overrides: Optional[Mapping[int, float]] = None) -> float:
    """
    EVM limit in percent for a QAM order.

    User overrides win over the standard table; 1024- and 4096-QAM exist
    only as overrides (from the run config or MFH_EVM_THRESHOLD_* variables).

    Raises:
        ConfigurationError: unsupported order
        ThresholdUnsetError: order without any configured limit
    """
    if qam_order not in config.SUPPORTED_QAM_ORDERS:
        raise ConfigurationError(f"Unsupported QAM order {qam_order}")

    if overrides is None:
        overrides = config.EVM_THRESHOLD_OVERRIDES
    if qam_order in overrides and overrides[qam_order] is not None:
        return float(overrides[qam_order])
    if qam_order in config.EVM_THRESHOLDS:
        return config.EVM_THRESHOLDS[qam_order]
    raise ThresholdUnsetError(qam_order)


def _check_grids(received: np.ndarray, reference: np.ndarray):
    received = np.asarray(received)
    reference = np.asarray(reference)
    if received.shape != reference.shape:
        raise EvmInputError(f"Grid shapes differ: {received.shape} vs {reference.shape}")
    if received.ndim != 2 or received.size == 0:
        raise EvmInputError("Grids must be non-empty (symbols x subcarriers)")
    return received, reference


def compute_evm(received: np.ndarray, reference: np.ndarray, qam_order: int,
                thresholds: Optional[Mapping[int, float]] = None) -> EvmReport:
    """
    RMS EVM in percent plus the per-OFDM-symbol breakdown.

    passes_threshold is None when the order has no configured limit.

    Raises:
        EvmInputError: shape mismatch or zero reference power
    """
    received, reference = _check_grids(received, reference)

    error_power = np.abs(received - reference) ** 2
    reference_power = np.abs(reference) ** 2
    total_reference = reference_power.sum()
    if total_reference == 0:
        raise EvmInputError("Reference grid has zero power")

    evm = 100.0 * float(np.sqrt(error_power.sum() / total_reference))

    per_symbol_reference = reference_power.sum(axis=1)
    if np.any(per_symbol_reference == 0):
        raise EvmInputError("An OFDM symbol of the reference grid has zero power")
    per_symbol = 100.0 * np.sqrt(error_power.sum(axis=1) / per_symbol_reference)

    try:
        threshold = evm_threshold(qam_order, thresholds)
    except ThresholdUnsetError:
        threshold = None

    return EvmReport(
        evm_rms_percent=evm,
        per_symbol_evm=per_symbol.tolist(),
        qam_order=qam_order,
        threshold_percent=threshold,
        passes_threshold=None if threshold is None else evm <= threshold,
    )


def symbol_error_rate(received: np.ndarray, reference: np.ndarray, qam_order: int) -> float:
    """Fraction of subcarrier symbols whose hard decision differs from the reference"""
    received, reference = _check_grids(received, reference)
    decided = qam_demap(received, qam_order)
    expected = qam_demap(reference, qam_order)
    return float(np.mean(decided != expected))
