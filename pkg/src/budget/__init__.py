"""
Fronthaul capacity budget for the SDM/WDM transceiver
"""
from budget.models import BudgetParams, BudgetReport, BudgetRow
from budget.link_budget import (
    PUBLISHED_TABLE1, build_table1, channel_count, cpri_equivalent_rate, invert_channel_count,
    table1_consistency, write_budget_csv, write_budget_json,
)

__all__ = [
    'BudgetParams',
    'BudgetReport',
    'BudgetRow',
    'PUBLISHED_TABLE1',
    'build_table1',
    'channel_count',
    'cpri_equivalent_rate',
    'invert_channel_count',
    'table1_consistency',
    'write_budget_csv',
    'write_budget_json',
]
