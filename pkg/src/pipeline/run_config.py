"""
Run configuration for single pipeline runs and sweeps
"""
import json
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError

import config
from budget.models import BudgetParams
from entropy.bitstream import Coder
from errors import ConfigurationError
from quantization.models import QuantizerConfig, QuantizerMode
from waveform.evm import evm_threshold
from waveform.models import OfdmConfig

SCHEMES = ('PCM', 'PCM+HC', 'PCM+AC', 'DPCM', 'DPCM+HC', 'DPCM+AC')


def parse_scheme(scheme: str) -> Tuple[QuantizerMode, Coder]:
    """'DPCM+AC' -> (DPCM, ARITHMETIC); a bare mode means no entropy coder"""
    mode_name, _, coder_name = scheme.strip().upper().partition('+')
    try:
        mode = QuantizerMode(mode_name)
        coder = Coder(coder_name) if coder_name else Coder.NONE
    except ValueError:
        raise ConfigurationError(f"Unknown scheme '{scheme}'; expected one of {SCHEMES}") from None
    if coder == Coder.NONE and coder_name:
        raise ConfigurationError(f"Unknown scheme '{scheme}'")
    return mode, coder


def scheme_name(mode: QuantizerMode, coder: Coder) -> str:
    return mode.value if coder == Coder.NONE else f"{mode.value}+{coder.value}"


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    qb_list: List[int]
    qam_order_list: List[int]
    scheme_list: List[str]


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    ofdm: OfdmConfig = Field(default_factory=OfdmConfig)
    quantizer: QuantizerConfig = Field(default_factory=lambda: QuantizerConfig.pcm(15))
    coder: Coder = Coder.NONE
    sweep: Optional[SweepSpec] = None
    budget: BudgetParams = Field(default_factory=BudgetParams)
    output_dir: str = config.OUTPUT_DIR
    rng_seed: int = config.DEFAULT_SEED
    evm_thresholds: Dict[int, float] = Field(default_factory=dict)
    ac_block_bits: int = config.AC_BLOCK_BITS
    max_workers: int = config.SWEEP_MAX_WORKERS
    min_sample_count: int = config.MIN_SAMPLE_BUDGET

    @classmethod
    def load(cls, path) -> "RunConfig":
        """
        Raises:
            ConfigurationError: unreadable file or invalid fields
        """
        try:
            text = Path(path).read_text(encoding='utf-8')
            return cls.model_validate(json.loads(text))
        except (OSError, json.JSONDecodeError, ValidationError) as e:
            raise ConfigurationError(f"Cannot load run config {path}: {e}") from None

    def thresholds(self) -> Dict[int, float]:
        """Environment overrides, then run-config overrides"""
        merged = dict(config.EVM_THRESHOLD_OVERRIDES)
        merged.update(self.evm_thresholds)
        return merged

    def signal_config(self, qam_order: int = None, seed: int = None) -> OfdmConfig:
        return self.ofdm.model_copy(update={
            'qam_order': self.ofdm.qam_order if qam_order is None else qam_order,
            'rng_seed': self.rng_seed if seed is None else seed,
        })

    def quantizer_for(self, mode: QuantizerMode, qb: int) -> QuantizerConfig:
        """The base quantizer settings re-targeted to another mode and QB"""
        base = self.quantizer
        if mode == QuantizerMode.PCM:
            return QuantizerConfig.pcm(qb, clip_sigma=base.clip_sigma)
        if base.mode == QuantizerMode.DPCM:
            return base.model_copy(update={'qb': qb})
        return QuantizerConfig.dpcm(qb, clip_sigma=base.clip_sigma)

    def check(self) -> "RunConfig":
        """
        Raises:
            ConfigurationError: any invalid section, a signal below the
                sample budget, or a swept QAM order with no EVM threshold
        """
        self.signal_config().check()
        self.quantizer.check()
        self.budget.check()

        if self.rng_seed < 0:
            raise ConfigurationError("rng_seed must be unsigned")
        if self.ac_block_bits < 1:
            raise ConfigurationError("ac_block_bits must be positive")
        if self.max_workers < 1:
            raise ConfigurationError("max_workers must be at least 1")
        if self.ofdm.sample_count < self.min_sample_count:
            raise ConfigurationError(
                f"Signal holds {self.ofdm.sample_count} samples, below the budget of {self.min_sample_count}"
            )

        thresholds = self.thresholds()
        if self.sweep is None:
            evm_threshold(self.ofdm.qam_order, thresholds)
            return self

        sweep = self.sweep
        if not (sweep.qb_list and sweep.qam_order_list and sweep.scheme_list):
            raise ConfigurationError("Sweep lists must be non-empty")
        for qb in sweep.qb_list:
            if not config.SWEEP_QB_MIN <= qb <= config.QB_MAX:
                raise ConfigurationError(f"Sweep qb {qb} outside [{config.SWEEP_QB_MIN}, {config.QB_MAX}]")
        for scheme in sweep.scheme_list:
            parse_scheme(scheme)
        for qam_order in sweep.qam_order_list:
            self.signal_config(qam_order=qam_order).check()
            evm_threshold(qam_order, thresholds)
        return self
