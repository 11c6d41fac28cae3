"""
Typed records for the PCM/DPCM quantizers
"""
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

import config
from errors import ConfigurationError


class QuantizerMode(str, Enum):
    PCM = "PCM"
    DPCM = "DPCM"


class ChannelTag(str, Enum):
    I = "I"
    Q = "Q"


class ResidualScaling(str, Enum):
    """How the DPCM residual quantizer picks its full scale"""
    PREDICTION = "prediction"  # clip_sigma x RMS of the least-squares prediction residual
    INPUT = "input"            # clip_sigma x RMS of the input, same as PCM


class QuantizerConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    qb: int
    mode: QuantizerMode = QuantizerMode.PCM
    clip_sigma: float = config.CLIP_SIGMA
    predictor_order: Optional[int] = None
    adaptation_step: Optional[float] = None
    residual_scaling: Optional[ResidualScaling] = None

    @classmethod
    def pcm(cls, qb: int, clip_sigma: float = config.CLIP_SIGMA) -> "QuantizerConfig":
        return cls(qb=qb, mode=QuantizerMode.PCM, clip_sigma=clip_sigma)

    @classmethod
    def dpcm(cls, qb: int, clip_sigma: float = config.CLIP_SIGMA,
             predictor_order: int = config.DPCM_PREDICTOR_ORDER,
             adaptation_step: float = config.DPCM_ADAPTATION_STEP,
             residual_scaling: ResidualScaling = ResidualScaling.PREDICTION) -> "QuantizerConfig":
        return cls(
            qb=qb,
            mode=QuantizerMode.DPCM,
            clip_sigma=clip_sigma,
            predictor_order=predictor_order,
            adaptation_step=adaptation_step,
            residual_scaling=residual_scaling,
        )

    def check(self) -> "QuantizerConfig":
        """
        Raises:
            ConfigurationError: out-of-range field, or DPCM fields on a PCM
                config (and vice versa)
        """
        errors = []
        if not config.QB_MIN <= self.qb <= config.QB_MAX:
            errors.append(f"qb must be in [{config.QB_MIN}, {config.QB_MAX}], got {self.qb}")
        if self.clip_sigma <= 0:
            errors.append("clip_sigma must be positive")

        dpcm_fields = (self.predictor_order, self.adaptation_step, self.residual_scaling)
        if self.mode == QuantizerMode.DPCM:
            if self.predictor_order is None or self.adaptation_step is None:
                errors.append("DPCM requires predictor_order and adaptation_step")
            else:
                if not 1 <= self.predictor_order <= 255:
                    errors.append("predictor_order must be in [1, 255]")
                if not 0 < self.adaptation_step < 2:
                    errors.append("adaptation_step must be in (0, 2)")
        elif any(field is not None for field in dpcm_fields):
            errors.append("PCM config must not carry DPCM fields")

        if errors:
            raise ConfigurationError("Invalid quantizer config: " + "; ".join(errors))
        return self

    @property
    def levels(self) -> int:
        return 1 << self.qb

    @property
    def scaling(self) -> ResidualScaling:
        return self.residual_scaling or ResidualScaling.PREDICTION


class CodewordStream(BaseModel):
    """Quantizer output for one real-valued component (I or Q)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    codewords: np.ndarray
    qb: int
    config: Optional[QuantizerConfig]
    full_scale: float
    sample_count: int
    channel_tag: ChannelTag = ChannelTag.I

    @property
    def step(self) -> float:
        return 2.0 * self.full_scale / (1 << self.qb)

    @property
    def mode(self) -> Optional[QuantizerMode]:
        return self.config.mode if self.config is not None else None

    def with_codewords(self, codewords: np.ndarray) -> "CodewordStream":
        """Same metadata carrying a different codeword array (entropy decode output)"""
        return self.model_copy(update={"codewords": codewords, "sample_count": int(len(codewords))})
