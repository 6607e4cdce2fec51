"""Check records shared by the verification suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str = ""
    key: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def line(self) -> str:
        tag = self.status.upper()
        head = f"{tag:4} {self.name}"
        if self.key:
            head += f" [{self.key}]"
        return f"{head}: {self.detail}" if self.detail else head

    def keyed(self, key: str) -> "CheckResult":
        return CheckResult(self.name, self.status, self.detail, key)


def check(name: str, ok: bool, detail: str = "", key: str = "") -> CheckResult:
    return CheckResult(name, "pass" if ok else "fail", "" if ok else detail, key)


def all_ok(results: Iterable[CheckResult]) -> bool:
    return all(r.ok for r in results)
