"""Shared exception types."""


class LgskError(Exception):
    """Base class for package errors."""


class BudgetExceeded(LgskError):
    """An enumeration exceeded its configured candidate budget."""


class ValidationError(LgskError):
    """A constructor or structural validator rejected its input."""


class ClassResolutionError(LgskError):
    """A derived predecessor set matched no class at the previous level.

    Carries the offending word in ``witness``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class QuotientError(LgskError):
    """A vertex quotient broke a structural property (left-resolving or
    the iota map); carries a witness in ``witness``."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class LevelMismatchError(LgskError):
    """Two systems cover different level ranges."""


class UndeterminedTower(LgskError):
    """A group tower with no stabilization verdict was asked for its limit."""


class NotWellDefined(LgskError):
    """A map does not descend to the requested quotient.

    Carries the offending column index in ``witness``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
