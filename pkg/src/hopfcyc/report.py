"""Pass/fail reports shared by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field

MAX_WITNESSES = 10


@dataclass
class Check:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    detail: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        if self.witnesses:
            out["witnesses"] = [list(w) if isinstance(w, tuple) else w for w in self.witnesses]
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name: str, witnesses=(), detail: str | None = None) -> Check:
        """Record a check that passes iff ``witnesses`` is empty."""
        w = list(witnesses)[:MAX_WITNESSES]
        c = Check(name, not w, w, detail)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            name = "%s/%s" % (prefix, c.name) if prefix else c.name
            self.checks.append(Check(name, c.passed, c.witnesses, c.detail))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"title": self.title, "pass": self.ok,
                "checks": [c.to_json() for c in self.checks]}


class Witnesses:
    """Collects up to MAX_WITNESSES failing cases while a loop runs."""

    def __init__(self):
        self.items: list = []

    def __call__(self, item) -> bool:
        if len(self.items) < MAX_WITNESSES:
            self.items.append(item)
        return len(self.items) >= MAX_WITNESSES

    def __iter__(self):
        return iter(self.items)

    def __bool__(self):
        return bool(self.items)
