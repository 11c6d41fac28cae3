"""
Typed records for the 5G NR waveform layer
"""
import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

import config
from errors import ConfigurationError


class OfdmConfig(BaseModel):
    """Numerology of one generated carrier"""
    model_config = ConfigDict(frozen=True)

    fft_size: int = Field(default=config.OFDM_FFT_SIZE, description="IFFT length")
    sample_rate: float = Field(default=config.OFDM_SAMPLE_RATE, description="Samples per second")
    occupied_subcarriers: int = Field(default=config.OFDM_OCCUPIED_SUBCARRIERS)
    cyclic_prefix_len: int = Field(default=config.OFDM_CYCLIC_PREFIX_LEN)
    qam_order: int = Field(default=config.OFDM_QAM_ORDER)
    num_symbols: int = Field(default=config.OFDM_NUM_SYMBOLS)
    rng_seed: int = Field(default=config.DEFAULT_SEED)

    def check(self) -> "OfdmConfig":
        """
        Check the numerology

        Raises:
            ConfigurationError: describing every invalid field
        """
        errors = []
        if self.fft_size < 1:
            errors.append(f"fft_size must be positive, got {self.fft_size}")
        if self.sample_rate <= 0:
            errors.append("sample_rate must be positive")
        if not 0 < self.occupied_subcarriers < self.fft_size:
            errors.append(
                f"occupied_subcarriers must be in (0, {self.fft_size}), got {self.occupied_subcarriers}"
            )
        if not 0 <= self.cyclic_prefix_len < self.fft_size:
            errors.append("cyclic_prefix_len must be in [0, fft_size)")
        if self.qam_order not in config.SUPPORTED_QAM_ORDERS:
            errors.append(f"qam_order must be one of {config.SUPPORTED_QAM_ORDERS}, got {self.qam_order}")
        if self.num_symbols <= 0:
            errors.append("num_symbols must be positive")
        if self.rng_seed < 0:
            errors.append("rng_seed must be unsigned")
        if errors:
            raise ConfigurationError("Invalid OFDM config: " + "; ".join(errors))
        return self

    @property
    def symbol_length(self) -> int:
        return self.fft_size + self.cyclic_prefix_len

    @property
    def sample_count(self) -> int:
        return self.num_symbols * self.symbol_length

    @property
    def bits_per_symbol(self) -> int:
        return int(math.log2(self.qam_order))

    @property
    def subcarrier_bins(self) -> np.ndarray:
        """
        FFT bin of each occupied subcarrier in ascending frequency order.

        Subcarriers sit at -n_neg..-1 and 1..n_pos around a nulled DC bin;
        an odd count puts the extra one on the negative side.
        """
        n_pos = self.occupied_subcarriers // 2
        n_neg = self.occupied_subcarriers - n_pos
        offsets = np.concatenate([np.arange(-n_neg, 0), np.arange(1, n_pos + 1)])
        return np.mod(offsets, self.fft_size)

    @property
    def power_scale(self) -> float:
        # normalizes the time-domain signal to unit average power
        return math.sqrt(self.fft_size / self.occupied_subcarriers)


class OfdmSignal(BaseModel):
    """Generated baseband signal with the grid it was built from"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    samples: np.ndarray
    reference_grid: np.ndarray
    config: OfdmConfig


class EvmReport(BaseModel):
    """EVM of a received grid against its reference"""
    evm_rms_percent: float
    per_symbol_evm: List[float]
    qam_order: int
    threshold_percent: Optional[float] = None
    passes_threshold: Optional[bool] = None
