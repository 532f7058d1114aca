#!/usr/bin/env python3
"""Verification results and their JSON-lines form"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

SCHEMA_VERSION = 1

STATUS_PASS = 'pass'
STATUS_FAIL = 'fail'
STATUS_NON_GENERIC = 'non-generic'


@dataclass
class CheckResult:
    """Outcome of one identity check"""
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    residual_terms: Optional[int] = None

    def merge(self, other: 'CheckResult', prefix: str = '') -> 'CheckResult':
        self.passed = self.passed and other.passed
        for key, value in other.details.items():
            self.details[f"{prefix}{key}"] = value
        if other.residual_terms is not None:
            self.residual_terms = (self.residual_terms or 0) + other.residual_terms
        return self


@dataclass
class CaseReport:
    """One JSON line of a verification run"""
    suite: str
    case: str
    status: str
    family: Optional[str] = None
    n: Optional[int] = None
    couplings: Optional[Dict[str, str]] = None
    lam: Optional[List[int]] = None
    r: Optional[int] = None
    residual_terms: Optional[int] = None
    details: Dict[str, Any] = field(default_factory=dict)
    elapsed: Optional[float] = None

    @property
    def failed(self) -> bool:
        return self.status not in (STATUS_PASS, STATUS_NON_GENERIC)

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            'schemaVersion': SCHEMA_VERSION,
            'suite': self.suite,
            'case': self.case,
            'status': self.status,
        }
        if self.family is not None:
            record['family'] = self.family
        if self.n is not None:
            record['n'] = self.n
        if self.couplings is not None:
            record['couplings'] = self.couplings
        if self.lam is not None:
            record['lambda'] = list(self.lam)
        if self.r is not None:
            record['r'] = self.r
        if self.residual_terms is not None:
            record['residualTermCount'] = self.residual_terms
        for key, value in self.details.items():
            record.setdefault(key, value)
        if timings and self.elapsed is not None:
            record['elapsed'] = round(self.elapsed, 6)
        return record

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, default=str)


def summarize(reports: List[CaseReport]) -> Dict[str, int]:
    summary = {STATUS_PASS: 0, STATUS_FAIL: 0, STATUS_NON_GENERIC: 0}
    for report in reports:
        summary[report.status] = summary.get(report.status, 0) + 1
    return summary
