"""Issues found while reading a scenario file."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING

from kostin.errors import ConfigError

if TYPE_CHECKING:
    from collections.abc import Iterator
    from pathlib import Path


class ValidationSeverity(StrEnum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True, slots=True)
class ValidationIssue:
    """One problem with a scenario key, or with a line that has no key."""

    severity: ValidationSeverity
    message: str
    location: str | None = None
    """Dotted key (e.g. 'initial.a')"""

    line: int | None = None
    """1-based line in the scenario file, if the key was given there"""

    @property
    def where(self) -> str:
        line = f"line {self.line}" if self.line is not None else ""
        return " ".join(part for part in (self.location, line) if part)

    def __str__(self) -> str:
        if not self.where:
            return f"{self.severity}: {self.message}"
        return f"{self.severity}: {self.where}: {self.message}"

    def to_error(self) -> ConfigError:
        return ConfigError(self.message, self.location, self.line)


@dataclass
class ValidationResult:
    """Every issue found in one scenario, in the order they were found."""

    issues: list[ValidationIssue] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        """True if no errors (warnings are OK)."""
        return not self.errors

    @property
    def errors(self) -> list[ValidationIssue]:
        return self._of(ValidationSeverity.ERROR)

    @property
    def warnings(self) -> list[ValidationIssue]:
        return self._of(ValidationSeverity.WARNING)

    def _of(self, severity: ValidationSeverity) -> list[ValidationIssue]:
        return [i for i in self.issues if i.severity == severity]

    def add_error(self, message: str, key: str | None = None, line: int | None = None) -> None:
        self.issues.append(ValidationIssue(ValidationSeverity.ERROR, message, key, line))

    def add_warning(
        self, message: str, key: str | None = None, line: int | None = None
    ) -> None:
        self.issues.append(ValidationIssue(ValidationSeverity.WARNING, message, key, line))

    def raise_first(self) -> None:
        """Raise the first error as a :class:`ConfigError`."""
        if self.errors:
            raise self.errors[0].to_error()

    def by_line(self) -> list[ValidationIssue]:
        """Issues in file order; issues without a line come last."""
        return sorted(
            self.issues, key=lambda i: (i.line is None, i.line or 0, i.location or "")
        )

    def lines(self, path: Path) -> Iterator[str]:
        for issue in self.by_line():
            yield f"{path}: {issue}"

    def __str__(self) -> str:
        if not self.issues:
            return "validation passed"
        return "\n".join(str(i) for i in self.issues)
