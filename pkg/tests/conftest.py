from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA: dict = {}


class CriterionLog:
    def record(self, label: str, ok: bool, detail: str = "") -> bool:
        prev = _CRITERIA.get(label)
        ok = bool(ok) and (prev is None or prev[0])
        _CRITERIA[label] = (ok, detail if not prev or not detail else f"{prev[1]}; {detail}")
        print(f"{'PASS' if ok else 'FAIL'} criterion {label}: {detail}")
        return ok


@pytest.fixture
def criterion():
    return CriterionLog()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: [int(p) if p.isdigit() else p for p in s.replace("(", " ").split()]):
        ok, detail = _CRITERIA[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
