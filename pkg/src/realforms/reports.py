"""Structured pass/fail reports shared by the verification checks and the CLI.

A CertifiedReport is a flat list of claim items; a claim either passed, failed
(computation disagreed with the claim), or errored (the computation could not
be carried out).  Reports serialize to plain JSON-compatible dicts with
deterministic key order.
"""
from __future__ import annotations

from dataclasses import dataclass, field


PASS = "pass"
FAIL = "fail"
ERROR = "error"


@dataclass
class CheckItem:
    claim_id: str
    status: str
    witness: object = None

    def to_json(self) -> dict:
        out = {"claim_id": self.claim_id, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class CertifiedReport:
    check_id: str
    paper_ref: str
    items: list[CheckItem] = field(default_factory=list)

    def add(self, claim_id: str, ok: bool, witness: object = None) -> CheckItem:
        item = CheckItem(claim_id, PASS if ok else FAIL, witness)
        self.items.append(item)
        return item

    def add_error(self, claim_id: str, witness: object = None) -> CheckItem:
        item = CheckItem(claim_id, ERROR, witness)
        self.items.append(item)
        return item

    def extend(self, other: "CertifiedReport", prefix: str = ""):
        for item in other.items:
            claim = f"{prefix}{item.claim_id}" if prefix else item.claim_id
            self.items.append(CheckItem(claim, item.status, item.witness))

    @property
    def passed(self) -> bool:
        return all(item.status == PASS for item in self.items) and bool(self.items)

    @property
    def status(self) -> str:
        if any(item.status == ERROR for item in self.items):
            return ERROR
        return PASS if self.passed else FAIL

    def failures(self) -> list[CheckItem]:
        return [item for item in self.items if item.status != PASS]

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "items": [item.to_json() for item in self.items],
        }


@dataclass
class SuiteEntry:
    check_id: str
    paper_ref: str
    status: str
    witness: object
    elapsed_ms: int

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "witness": self.witness,
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass
class SuiteReport:
    version: str
    entries: list[SuiteEntry] = field(default_factory=list)

    def sorted_entries(self) -> list[SuiteEntry]:
        return sorted(self.entries, key=lambda e: e.check_id)

    @property
    def exit_code(self) -> int:
        return 0 if all(e.status == PASS for e in self.entries) else 1

    def summary(self) -> dict:
        counts = {PASS: 0, FAIL: 0, ERROR: 0}
        for e in self.entries:
            counts[e.status] = counts.get(e.status, 0) + 1
        return counts

    def to_json(self) -> dict:
        return {
            "tool": "realforms",
            "version": self.version,
            "checks": [e.to_json() for e in self.sorted_entries()],
            "summary": self.summary(),
            "exit_code": self.exit_code,
        }
