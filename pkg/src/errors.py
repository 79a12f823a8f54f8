"""
Exception types raised by the pfg toolkit.

Everything derives from ``PfgError`` (itself a ``ValueError``) so the CLI can map
any input or precondition problem to exit status 2 in one place.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from src.pfsg import PfsgVerdict


class PfgError(ValueError):
    """Base class for all toolkit errors."""


class InvalidOrderError(PfgError):
    """Group order or constructor parameter out of range."""


class InvalidTableError(PfgError):
    """Cayley table violates a group axiom."""


class InvalidElementError(PfgError):
    """Element index outside ``[0, order)``."""


class InvalidSubsetError(PfgError):
    """Subset member outside its owning group."""


class InvalidMapError(PfgError):
    """Map array has the wrong length, range, or is not a homomorphism."""


class ResourceLimitError(PfgError):
    """Requested work exceeds a configured bound."""


class DegreeParseError(PfgError):
    """A degree string is not a rational ``p/q`` in ``[0, 1]``."""


class TripleSumError(PfgError):
    """A membership triple has component sum above 1."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class ThresholdError(PfgError):
    """A cut threshold violates ``r + s + t <= 1``."""


class CarrierMismatchError(PfgError):
    """Two operands live on different carriers."""


class NotPfsgError(PfgError):
    """Precondition failure: the input is not a picture fuzzy subgroup."""

    def __init__(self, message: str, verdict: "PfsgVerdict | None" = None):
        super().__init__(message)
        self.verdict = verdict


class UnsatisfiableChainError(PfgError):
    """No subgroup chain of the requested length exists."""


class UnknownGroupError(PfgError):
    """Group reference is neither a registry name nor a readable file."""


class UnknownTheoremError(PfgError):
    """Theorem tag not in the verifier catalogue."""

    def __init__(self, message: str, valid: list[str] | None = None):
        super().__init__(message)
        self.valid = valid or []


class InputFileError(PfgError):
    """A group, PFS or map file could not be read or validated."""

    def __init__(self, message: str, detail: Any = None):
        super().__init__(message)
        self.detail = detail


class OutputFileError(PfgError):
    """An output file could not be written."""


class ConfigError(PfgError):
    """An environment setting such as ``PFG_MAX_ORDER`` is malformed."""
