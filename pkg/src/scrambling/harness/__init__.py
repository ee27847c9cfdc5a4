"""Batch scans, frequency fits, closed-form comparison and the identity suite."""

from .fit import FrequencyFit, fit_frequency
from .identity import IdentitySuiteResult, run_identity_suite
from .io import read_csv, write_csv
from .report import full_report, comparison_report
from .scan import ConfigError, ScanConfig, run_scan, scan_balancing_points

__all__ = [
    "FrequencyFit", "fit_frequency", "IdentitySuiteResult", "run_identity_suite",
    "read_csv", "write_csv", "full_report", "comparison_report", "ConfigError",
    "ScanConfig", "run_scan", "scan_balancing_points",
]
