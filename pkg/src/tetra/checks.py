"""Pass/fail records shared by the axiom verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: object = None

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.ok}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class AxiomReport:
    subject: str
    checks: list = field(default_factory=list)

    def add(self, name, ok, witness=None):
        self.checks.append(Check(name, bool(ok), witness))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self):
        return self.ok

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"subject": self.subject, "pass": self.ok,
                "checks": [c.to_json() for c in self.checks]}

    def __str__(self):
        lines = [f"{self.subject}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            tag = "ok  " if c.ok else "FAIL"
            w = "" if c.witness is None else f"  {c.witness}"
            lines.append(f"  [{tag}] {c.name}{w}")
        return "\n".join(lines)


def compare(report: AxiomReport, name: str, lhs, rhs, describe=None):
    """Record whether two matrices agree; on failure the witness names the
    first differing (row, column) position, optionally decoded by ``describe``."""
    if lhs.shape != rhs.shape:
        report.add(name, False, f"shape {lhs.shape} vs {rhs.shape}")
        return False
    pos = lhs.first_difference(rhs)
    if pos is None:
        report.add(name, True)
        return True
    report.add(name, False, describe(*pos) if describe else {"row": pos[0], "col": pos[1]})
    return False
