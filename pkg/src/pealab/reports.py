"""Violation reports shared by all structure checkers.

Checkers never fail fast: they return a report listing every violation,
each with the rule name (PE1..PE4, PD1, PD2, isotone, ...) and the
witnessing elements.  An empty report means the check passed.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    rule: str
    where: tuple[tuple[str, str], ...] = ()
    detail: str = ""

    def __str__(self) -> str:
        msg = f"{self.rule} violated"
        if self.where:
            msg += " at " + ", ".join(f"{k}={v}" for k, v in self.where)
        if self.detail:
            msg += f": {self.detail}"
        return msg

    def to_obj(self) -> dict:
        return {"rule": self.rule, "at": dict(self.where), "detail": self.detail}


@dataclass(frozen=True)
class Report:
    subject: str
    violations: tuple[Violation, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [str(v) for v in self.violations]

    def to_obj(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [v.to_obj() for v in self.violations],
            "notes": list(self.notes),
        }
