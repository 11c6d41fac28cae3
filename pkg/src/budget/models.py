"""
Link budget parameters and report rows
"""
from typing import List

from pydantic import BaseModel, ConfigDict

import config
from errors import ConfigurationError


class BudgetParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    symbol_rate: float = config.BUDGET_SYMBOL_RATE                        # baud
    bits_per_transport_symbol: int = config.BUDGET_BITS_PER_SYMBOL        # DP-16QAM
    data_cores: int = config.BUDGET_CORE_COUNT
    sample_rate_per_channel: float = config.BUDGET_FS_GSPS                # GSa/s
    iq_factor: int = 2
    mimo_overhead: float = 16 / 15
    line_coding_overhead: float = 66 / 64
    reference_qb: int = 15
    fec_overhead: float = config.BUDGET_FEC_OVERHEAD

    def check(self) -> "BudgetParams":
        errors = []
        for name in ('symbol_rate', 'bits_per_transport_symbol', 'data_cores',
                     'sample_rate_per_channel', 'iq_factor', 'reference_qb'):
            if getattr(self, name) <= 0:
                errors.append(f"{name} must be positive")
        if self.mimo_overhead < 1 or self.line_coding_overhead < 1:
            errors.append("mimo_overhead and line_coding_overhead are ratios >= 1")
        if not 0 <= self.fec_overhead < 1:
            errors.append("fec_overhead must be in [0, 1)")
        if errors:
            raise ConfigurationError("Invalid budget params: " + "; ".join(errors))
        return self

    @property
    def transport_capacity(self) -> float:
        """Raw bit/s over all data cores"""
        return self.symbol_rate * self.bits_per_transport_symbol * self.data_cores


class BudgetRow(BaseModel):
    qam_order: int
    scheme: str
    effective_qb: float
    channels: int
    rate_tbps: float


class BudgetReport(BaseModel):
    params: BudgetParams
    rows: List[BudgetRow]
