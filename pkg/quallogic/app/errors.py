# quallogic/app/errors.py
from typing import Optional


class QualLogicError(Exception):
    """Base class for every error raised by the workbench."""

    kind = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


# ---------------- syntax ----------------
class FormulaSyntaxError(QualLogicError, ValueError):
    kind = "syntax"

    def __init__(self, message: str, text: str = "", line: Optional[int] = None,
                 column: Optional[int] = None, expected: Optional[list] = None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.text = text
        self.line = line
        self.column = column
        self.expected = sorted(expected or [])


class LanguageError(QualLogicError):
    kind = "language"

    def __init__(self, lang: str, connective: str, message: Optional[str] = None):
        super().__init__(message or f"connective {connective!r} is not permitted in {lang}")
        self.lang = lang
        self.connective = connective


class NotSifError(QualLogicError):
    kind = "not-sif"


# ---------------- evaluation ----------------
class UnboundVariableError(QualLogicError, KeyError):
    kind = "unbound"

    def __init__(self, name: str):
        super().__init__(f"no value for {name!r}")
        self.name = name

    def __str__(self):
        return self.message


class StateError(QualLogicError):
    kind = "state"


class ModelError(QualLogicError):
    kind = "model"


class BoundError(QualLogicError):
    kind = "bound"


class InconsistentValuationError(QualLogicError):
    kind = "inconsistent"


class OrderError(QualLogicError):
    kind = "order"


# ---------------- proofs ----------------
class DerivationFormatError(QualLogicError):
    kind = "derivation"
