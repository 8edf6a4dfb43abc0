"""Validation reports, command reports, and their canonical serialization."""

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    """Outcome of a single law or axiom check.

    ``status`` is ``"pass"``, ``"fail"`` or ``"skip"``; ``witnesses`` hold
    JSON-compatible values already in canonical order.
    """

    name: str
    status: str
    witnesses: tuple = ()
    detail: str = ""

    @classmethod
    def of(cls, name, witnesses=(), detail=""):
        witnesses = tuple(witnesses)
        return cls(name, "fail" if witnesses else "pass", witnesses, detail)

    @property
    def passed(self):
        return self.status == "pass"

    def to_json(self):
        out = {"name": self.name, "status": self.status}
        if self.witnesses:
            out["witnesses"] = list(self.witnesses)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple = ()

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    def __bool__(self):
        return self.ok

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self):
        return [c for c in self.checks if c.status == "fail"]


@dataclass
class Report:
    """What a CLI command emits: echo, checks, derived artifacts."""

    command: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    def extend(self, checks):
        self.checks.extend(checks)

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    def to_json(self):
        out = {}
        if self.command:
            out["command"] = list(self.command)
        if self.checks:
            out["checks"] = [c.to_json() for c in self.checks]
        if self.artifacts:
            out["artifacts"] = self.artifacts
        return out


def _text_value(value):
    return json.dumps(value, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def emit_report(report, fmt="text"):
    """Serialize ``report`` to UTF-8 bytes; output is deterministic."""
    if fmt == "json":
        doc = json.dumps(report.to_json(), sort_keys=True, indent=2, ensure_ascii=False)
        return (doc + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    if report.command:
        lines.append("# " + " ".join(report.command))
    for c in report.checks:
        line = f"{c.status.upper()} {c.name}"
        if c.detail:
            line += f" ({c.detail})"
        if c.witnesses:
            line += " witnesses=" + _text_value(list(c.witnesses))
        lines.append(line)
    for key in sorted(report.artifacts):
        lines.append(f"{key} = {_text_value(report.artifacts[key])}")
    return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""
