"""Error taxonomy shared by the library, the service and the CLI.

Three failure classes map onto distinct CLI exit codes and service
error records:

* ``DomainError`` -- the inputs violate a precondition (exit 2),
* ``ResourceBudgetError`` -- an enumeration or search budget ran out
  before a verdict was reached; the result is unknown, not false
  (exit 3),
* ``BracketError`` -- a root finder scanned its bracket and found no
  sign change; diagnostics carry the scanned values (exit 4).
"""

from __future__ import annotations

from typing import Any


class DomainError(ValueError):
    """An argument violates a documented precondition."""


class ResourceBudgetError(RuntimeError):
    """A search or enumeration budget was exhausted before a verdict.

    ``partial`` may carry whatever partial evidence was gathered (for
    example a peeling verdict or the number of candidates examined).
    The semantic content is "unknown", never "false".
    """

    def __init__(self, message: str, partial: Any = None):
        super().__init__(message)
        self.partial = partial


class BracketError(RuntimeError):
    """A bracketed scan found no root; carries the scan diagnostics."""

    def __init__(self, message: str, scan: Any = None):
        super().__init__(message)
        self.scan = scan


def error_kind(exc: BaseException) -> str:
    """Classify an exception into the report error vocabulary."""
    if isinstance(exc, DomainError):
        return "domain"
    if isinstance(exc, ResourceBudgetError):
        return "resource"
    if isinstance(exc, BracketError):
        return "bracket"
    return "internal"


EXIT_CODES = {"domain": 2, "resource": 3, "bracket": 4, "internal": 1}
