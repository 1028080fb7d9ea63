"""
Suite reports: check results, serialization and schema validation.
"""

import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import yaml
from jsonschema import SchemaError, ValidationError, validate

from imagshift.utils import config

REPORT_SCHEMA = 'suite-report-schema.json'
FORMATS = ('json', 'yaml', 'text')


@dataclass
class CheckResult:
    """
    Outcome of one check.

    ``defect`` is None when the check raised; ``error`` then holds the
    message and the check fails.
    """

    id: str
    anchor: str
    defect: Optional[float]
    tol: float
    passed: bool
    ms: int = 0
    note: str = ''
    error: str = ''

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'id': self.id,
            'anchor': self.anchor,
            'defect': self.defect,
            'tol': self.tol,
            'pass': self.passed,
            'ms': self.ms,
        }
        if self.note:
            data['note'] = self.note
        if self.error:
            data['error'] = self.error
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CheckResult':
        return cls(data['id'], data['anchor'], data['defect'], data['tol'], data['pass'],
                   data.get('ms', 0), data.get('note', ''), data.get('error', ''))


@dataclass
class SuiteReport:
    """Results of a suite, kept sorted by check id."""

    suite: str
    checks: List[CheckResult] = field(default_factory=list)

    def __post_init__(self):
        self.checks = sorted(self.checks, key=lambda c: c.id)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'checks': [c.to_dict() for c in self.checks],
            'pass': self.passed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SuiteReport':
        return cls(data['suite'], [CheckResult.from_dict(c) for c in data.get('checks', [])])


def finite_or_none(value: Optional[float]) -> Optional[float]:
    """Non-finite defects are reported as null."""
    if value is None or not math.isfinite(value):
        return None
    return float(value)


def load_schema(name: str = REPORT_SCHEMA) -> Dict[str, Any]:
    """Load a JSON schema from the package resources."""
    with open(os.path.join(config.RESOURCES_PATH, name), 'r') as f:
        return json.load(f)


def validate_report(data: Dict[str, Any],
                    schema: Optional[Dict[str, Any]] = None) -> Tuple[bool, Optional[str]]:
    """
    Validate a report dictionary against the report schema.

    Returns:
        Tuple of (is_valid, error_message)
    """
    try:
        validate(instance=data, schema=schema or load_schema())
        return True, None
    except ValidationError as e:
        return False, str(e.message)
    except SchemaError as e:
        return False, f"Schema error: {str(e)}"


def to_json(report: SuiteReport) -> str:
    return json.dumps(report.to_dict(), indent=2, allow_nan=False) + '\n'


def to_yaml(report: SuiteReport) -> str:
    return yaml.dump(report.to_dict(), default_flow_style=False, sort_keys=False)


def from_json(text: str) -> SuiteReport:
    return SuiteReport.from_dict(json.loads(text))


def from_yaml(text: str) -> SuiteReport:
    return SuiteReport.from_dict(yaml.safe_load(text))
