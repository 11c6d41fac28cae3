"""
Exports module for the MFH toolkit
CSV/JSON writers for sweep, operating-point, histogram, EVM and benchmark reports
"""

from .report_exporter import ReportExporter

__all__ = ['ReportExporter']
