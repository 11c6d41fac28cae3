"""
Gray-mapped square QAM constellations with unit average power
"""
import math
from functools import lru_cache

import numpy as np

import config
from errors import ConfigurationError


def _check_order(order: int) -> int:
    if order not in config.SUPPORTED_QAM_ORDERS:
        raise ConfigurationError(
            f"Unsupported QAM order {order}; expected one of {config.SUPPORTED_QAM_ORDERS}"
        )
    return int(math.isqrt(order))


@lru_cache(maxsize=None)
def _axis_tables(side: int):
    """Gray label <-> amplitude level tables for one axis"""
    levels = np.arange(side)
    labels = levels ^ (levels >> 1)
    level_of_label = np.empty(side, dtype=np.int64)
    level_of_label[labels] = levels
    amplitudes = 2 * levels - (side - 1)
    return labels, level_of_label, amplitudes


@lru_cache(maxsize=None)
def _constellation(order: int) -> np.ndarray:
    side = _check_order(order)
    bits_per_axis = int(math.log2(side))
    _, level_of_label, amplitudes = _axis_tables(side)

    symbols = np.arange(order)
    i_level = level_of_label[symbols >> bits_per_axis]
    q_level = level_of_label[symbols & (side - 1)]
    points = amplitudes[i_level] + 1j * amplitudes[q_level]
    points = points / math.sqrt(2 * (order - 1) / 3)
    points.setflags(write=False)
    return points


def qam_constellation(order: int) -> np.ndarray:
    """
    Constellation indexed by symbol value.

    The upper half of each symbol's bits selects the in-phase level and the
    lower half the quadrature level, each Gray-coded so neighbouring levels
    differ in one bit.
    """
    return _constellation(order)


def qam_map(symbols: np.ndarray, order: int) -> np.ndarray:
    """Map integer symbols in [0, order) to constellation points"""
    symbols = np.asarray(symbols)
    if symbols.size and (symbols.min() < 0 or symbols.max() >= order):
        raise ConfigurationError(f"Symbol values must lie in [0, {order})")
    return qam_constellation(order)[symbols]


def qam_demap(points: np.ndarray, order: int) -> np.ndarray:
    """Hard-decision nearest-point demapper (per-axis slicing)"""
    side = _check_order(order)
    bits_per_axis = int(math.log2(side))
    labels, _, _ = _axis_tables(side)
    scale = math.sqrt(2 * (order - 1) / 3)

    points = np.asarray(points) * scale
    i_level = np.clip(np.rint((points.real + side - 1) / 2), 0, side - 1).astype(np.int64)
    q_level = np.clip(np.rint((points.imag + side - 1) / 2), 0, side - 1).astype(np.int64)
    return (labels[i_level] << bits_per_axis) | labels[q_level]


def bits_to_symbols(bits: np.ndarray, bits_per_symbol: int) -> np.ndarray:
    """Pack MSB-first bit groups (..., k) into integers"""
    weights = 1 << np.arange(bits_per_symbol - 1, -1, -1)
    return bits.astype(np.int64) @ weights
