"""
Exception hierarchy for the group-geometry toolkit.

Every error raised on purpose derives from GrpGeoError so the CLI can map it
to an exit code without catching unrelated bugs.
"""
from enum import Enum
from typing import Any, Dict, Optional


class GrpGeoError(Exception):
    """Base class for all expected failures."""


class NotAGroupReason(str, Enum):
    NO_IDENTITY = "no-identity"
    NOT_LATIN = "not-latin"
    NOT_ASSOCIATIVE = "not-associative"
    NO_INVERSE = "no-inverse"


class NotAGroup(GrpGeoError):
    def __init__(self, reason: NotAGroupReason, detail: str = "") -> None:
        self.reason = NotAGroupReason(reason)
        self.detail = detail
        message = f"not a group ({self.reason.value})"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class BadParameter(GrpGeoError):
    pass


class CapExceeded(GrpGeoError):
    """A configured size cap or work budget was hit."""

    def __init__(self, what: str, limit: int, reached: Optional[int] = None) -> None:
        self.what = what
        self.limit = limit
        self.reached = reached
        message = f"{what} exceeds cap {limit}"
        if reached is not None:
            message += f" (reached {reached})"
        super().__init__(message)


class OrderCapExceeded(CapExceeded):
    pass


class LatticeCapExceeded(CapExceeded):
    pass


class WidthCapExceeded(CapExceeded):
    pass


class BudgetExceeded(CapExceeded):
    pass


class WordSyntaxError(GrpGeoError):
    def __init__(self, message: str, position: int) -> None:
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnknownLabel(GrpGeoError):
    def __init__(self, label: str) -> None:
        self.label = label
        super().__init__(f"unknown element label {label!r}")


class VariableOutOfRange(GrpGeoError):
    def __init__(self, index: int, n_vars: int) -> None:
        self.index = index
        self.n_vars = n_vars
        super().__init__(f"variable x{index} out of range for n_vars={n_vars}")


class ModeMismatch(GrpGeoError):
    pass


class EmptySet(GrpGeoError):
    pass


class NotADomain(GrpGeoError):
    pass


class CharacterizationDisagreement(GrpGeoError):
    """The domain characterizations disagreed on one group."""

    def __init__(self, subject: str, verdicts: Dict[str, Any]) -> None:
        self.subject = subject
        self.verdicts = verdicts
        summary = ", ".join(f"{k}={v}" for k, v in sorted(verdicts.items()))
        super().__init__(f"domain characterizations disagree on {subject}: {summary}")


class GroupFileError(GrpGeoError):
    def __init__(self, path: str, line: int, column: int, message: str) -> None:
        self.path = path
        self.line = line
        self.column = column
        super().__init__(f"{path}:{line}:{column}: {message}")
