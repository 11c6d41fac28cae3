"""
End-to-end fronthaul compression pipeline and sweeps
"""
from pipeline.run_config import SCHEMES, RunConfig, SweepSpec, parse_scheme, scheme_name
from pipeline.runner import SweepRow, run_pipeline
from pipeline.sweep import SweepResult, run_sweep, select_operating_points
from pipeline.histogram_export import GaussianFit, export_histogram, fit_histogram

__all__ = [
    'SCHEMES',
    'RunConfig',
    'SweepSpec',
    'parse_scheme',
    'scheme_name',
    'SweepRow',
    'run_pipeline',
    'SweepResult',
    'run_sweep',
    'select_operating_points',
    'GaussianFit',
    'export_histogram',
    'fit_histogram',
]
