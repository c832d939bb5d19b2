"""Exception types shared across the package."""

from __future__ import annotations


class ParseError(ValueError):
    """Input text is outside the formula grammar.

    ``span`` is the (start, end) character range of the offending token,
    end-exclusive; for unexpected end of input it points one past the text.
    ``check`` names the validation category the failure falls under.
    """

    def __init__(self, message: str, span: tuple[int, int], check: str = "ConnectivePlacement"):
        super().__init__(f"{message} (at {span[0]}..{span[1]})")
        self.message = message
        self.span = span
        self.check = check


class CaptureError(ValueError):
    """Substitution would capture a variable under a binder."""


class UnmappedConstant(KeyError):
    """A constant in the formula has no interpretation in the model."""


class OracleBudgetExceeded(RuntimeError):
    """Model enumeration would exceed the configured interpretation budget."""


class TemplateMismatch(ValueError):
    """Formula root does not match the contrary template being applied."""


class TransportError(RuntimeError):
    """HTTP completion failed after exhausting retries."""


class AuthError(RuntimeError):
    """Endpoint rejected the credentials."""


class BudgetExceeded(RuntimeError):
    """Per-instance token budget exhausted."""


class UnboundPlaceholder(KeyError):
    """A prompt template placeholder was left without a binding."""


class ExtractionError(ValueError):
    """No structured block in the model output validates after repair."""


class SchemaError(ValueError):
    """A dataset line violates the declared record schema."""

    def __init__(self, message: str, line_no: int | None = None):
        super().__init__(message if line_no is None else f"line {line_no}: {message}")
        self.line_no = line_no


class MissingPrediction(KeyError):
    """An instance id has no matching prediction record."""


class EmptyText(ValueError):
    """Text metric called on input with no words or sentences."""


class InconsistentPremisesWarning(UserWarning):
    """No model of the premises exists at any checked domain size."""
