"""
Check Reports

A check runs over many samples and either passes or fails with the first
witness. CheckRecorder accumulates the statistics while a check runs.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

from .schemas import to_jsonable


class CheckStatus(str, Enum):
    PASS = 'pass'
    FAIL = 'fail'


@dataclass(frozen=True)
class CheckReport:
    check: str
    status: CheckStatus
    samples: int
    witness: Optional[Any] = None
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    def to_dict(self) -> dict[str, Any]:
        document: dict[str, Any] = {
            'check': self.check,
            'status': self.status.value,
            'samples': self.samples,
            'witness': to_jsonable(self.witness),
        }
        if self.detail:
            document['detail'] = self.detail
        return document


class CheckRecorder:
    """Counts samples for one check and keeps the first failing witness."""

    def __init__(self, check: str):
        self.check = check
        self.stats = {
            'samples': 0,
            'failures': 0,
        }
        self.witness: Optional[Any] = None
        self.detail: Optional[str] = None

    def record(self, ok: bool, witness: Any = None, detail: Optional[str] = None) -> bool:
        self.stats['samples'] += 1
        if not ok:
            self.stats['failures'] += 1
            if self.stats['failures'] == 1:
                self.witness = witness
                self.detail = detail
        return ok

    def get_statistics(self) -> dict[str, int]:
        return self.stats.copy()

    def report(self) -> CheckReport:
        status = CheckStatus.PASS if self.stats['failures'] == 0 else CheckStatus.FAIL
        if status is CheckStatus.FAIL:
            logging.warning(
                f"Check {self.check} failed on {self.stats['failures']}/{self.stats['samples']} samples"
            )
        else:
            logging.debug(f"Check {self.check} passed on {self.stats['samples']} samples")
        return CheckReport(
            check=self.check,
            status=status,
            samples=self.stats['samples'],
            witness=self.witness,
            detail=self.detail,
        )


def single_check(check: str, ok: bool, witness: Any = None, detail: Optional[str] = None) -> CheckReport:
    """Report for a check decided by one exhaustive computation; the witness is kept either way."""
    if not ok:
        logging.warning(f"Check {check} failed")
    return CheckReport(
        check=check,
        status=CheckStatus.PASS if ok else CheckStatus.FAIL,
        samples=1,
        witness=witness,
        detail=detail,
    )


def merge_reports(groups: Iterable[Iterable[CheckReport]]) -> list[CheckReport]:
    """Flatten and sort by check name; duplicate names keep their relative order."""
    merged = [report for group in groups for report in group]
    return sorted(merged, key=lambda r: r.check)


def all_passed(reports: Iterable[CheckReport]) -> bool:
    return all(r.passed for r in reports)
