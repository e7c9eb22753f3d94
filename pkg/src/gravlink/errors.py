"""Exception hierarchy shared by all gravlink modules.

The CLI maps these onto process exit codes, so library code must raise the
specific class rather than a bare ``ValueError``.
"""


class GravlinkError(Exception):
    """Base class for all package errors."""


class DomainError(GravlinkError, ValueError):
    """Input outside the mathematical domain (superluminal boost, d <= 0, ...)."""


class ContractError(GravlinkError, ValueError):
    """A documented precondition was violated (asymmetric tensor, bad norm, ...)."""


class SingularityError(DomainError):
    """Field evaluation requested at (or too close to) a source point."""


class ConvergenceError(GravlinkError, ArithmeticError):
    """An iterative solver did not converge within its budget."""


class ConfigError(GravlinkError, ValueError):
    """Scenario file fails schema validation; message carries the JSON path."""


class BudgetError(GravlinkError, ValueError):
    """A configured resource budget (Hilbert-space dimension) would be exceeded."""
