"""Pass/fail reports shared by the verification routines."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    family: str
    label: str
    passed: bool

    def line(self, prefix):
        status = "PASS" if self.passed else "FAIL"
        return f"{prefix} {self.family} {self.label} {status}".replace("  ", " ")


@dataclass
class Report:
    title: str
    prefix: str = "CHECK"
    checks: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, family, label, passed):
        self.checks.append(Check(family, label, bool(passed)))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def lines(self):
        return [c.line(self.prefix) for c in self.checks]

    def summary(self):
        out = {}
        for c in self.checks:
            entry = out.setdefault(c.family, {"instances": 0, "failures": []})
            entry["instances"] += 1
            if not c.passed:
                entry["failures"].append(c.label)
        return out

    def to_json(self):
        return {
            "title": self.title,
            **self.meta,
            "passed": self.passed,
            "summary": self.summary(),
        }

    def to_text(self):
        head = [f"# {self.title}"]
        head += [f"# {k}: {v}" for k, v in self.meta.items()]
        total = len(self.checks)
        bad = len(self.failures())
        tail = [f"# {total - bad}/{total} passed"]
        return "\n".join(head + self.lines() + tail)
