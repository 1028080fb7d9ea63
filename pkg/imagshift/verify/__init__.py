"""Verification suites and their machine-readable reports."""

from imagshift.verify.report import (
    FORMATS,
    CheckResult,
    SuiteReport,
    from_json,
    from_yaml,
    load_schema,
    to_json,
    to_yaml,
    validate_report,
)
from imagshift.verify.suites import (
    ALL,
    SUITE_NAMES,
    SUITES,
    Check,
    SuiteOptions,
    SuiteRunner,
    effective_tolerance,
)

__all__ = [
    'Check',
    'CheckResult',
    'SuiteOptions',
    'SuiteReport',
    'SuiteRunner',
    'SUITES',
    'SUITE_NAMES',
    'ALL',
    'FORMATS',
    'effective_tolerance',
    'validate_report',
    'load_schema',
    'to_json',
    'to_yaml',
    'from_json',
    'from_yaml',
]
