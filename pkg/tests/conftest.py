import os
from dataclasses import dataclass, field

import pytest

EXTENDED = os.environ.get("EXPLOG_EXTENDED", "") not in ("", "0")

CRITERIA = {
    1: "limiting constants to 1e-10, under 10 s",
    2: "median-limit identities to 1e-12",
    3: "reference small-n counts, engine and oracle, under 5 s",
    4: "table rows at n = 1000 (999), +/-1 in the last decimal",
    5: "table properties for n <= 300",
    6: "engine equals oracle for n <= 8; square counters agree for n <= 7",
    7: "empirical limits: n = 4000 closer than n = 1000 (non-gating)",
}


@dataclass
class Criterion:
    number: int
    checks: list = field(default_factory=list)  # (label, passed, detail)

    def record(self, label: str, passed: bool, detail: str = "") -> None:
        self.checks.append((label, bool(passed), detail))

    @property
    def status(self) -> str:
        if not self.checks:
            return "NOT RUN"
        return "PASS" if all(ok for _, ok, _ in self.checks) else "FAIL"


class AcceptanceReport:
    def __init__(self):
        self.criteria = {n: Criterion(n) for n in CRITERIA}

    def __getitem__(self, number: int) -> Criterion:
        return self.criteria[number]

    def lines(self) -> list[str]:
        out = []
        for n, crit in self.criteria.items():
            passed = sum(ok for _, ok, _ in crit.checks)
            out.append(f"criterion {n}: {crit.status}  {CRITERIA[n]}  ({passed}/{len(crit.checks)} checks)")
            for label, ok, detail in crit.checks:
                if not ok:
                    out.append(f"    failed: {label}  {detail}".rstrip())
        return out


_REPORT = AcceptanceReport()


@pytest.fixture(scope="session")
def acceptance():
    return _REPORT


def pytest_terminal_summary(terminalreporter):
    if not any(c.checks for c in _REPORT.criteria.values()):
        return
    terminalreporter.section("acceptance criteria")
    for line in _REPORT.lines():
        terminalreporter.write_line(line)
