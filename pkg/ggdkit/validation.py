from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    """One line of a validation report.

    `kind` is a short machine-readable tag (for instance "crossing" or
    "duplicate-right"), `subjects` the ids, edges or op indices it is
    about, and `detail` a human-readable explanation.
    """

    kind: str
    subjects: tuple = ()
    detail: str = ""

    def format(self):
        subjects = ", ".join(repr(s) for s in self.subjects)
        line = f"{self.kind}: {subjects}"
        if self.detail:
            line += f" ({self.detail})"
        return line

    def to_dict(self):
        return {"kind": self.kind, "subjects": [_plain(s) for s in self.subjects], "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def is_valid(self):
        return not self.violations

    def kinds(self):
        return sorted({v.kind for v in self.violations})

    def format(self):
        if self.is_valid:
            return "valid"
        return "\n".join(v.format() for v in self.violations)

    def to_dict(self):
        return {"valid": self.is_valid, "violations": [v.to_dict() for v in self.violations]}


def _plain(value):
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    return value
