"""Exception hierarchy.

Every error raised on bad user input derives from :class:`KavyaInputError`
(CLI exit code 1); annotation problems derive from
:class:`KavyaValidationError` (exit code 2).
"""

from __future__ import annotations


class KavyaError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class KavyaInputError(KavyaError):
    pass


class KavyaValidationError(KavyaError):
    exit_code = 2


# --- text-core -------------------------------------------------------------


class InvalidCharacter(KavyaInputError):
    def __init__(self, char: str, position: int, scheme: str, context: str = ""):
        self.char = char
        self.position = position
        self.scheme = scheme
        where = f" ({context})" if context else ""
        super().__init__(
            f"invalid character {char!r} (U+{ord(char):04X}) at position "
            f"{position} for scheme {scheme}{where}"
        )


class NoVowel(KavyaInputError):
    def __init__(self, text: str, context: str = ""):
        self.text = text
        where = f"{context}: " if context else ""
        super().__init__(f"{where}no vowel in {text!r}")


class CompositionFormatError(KavyaInputError):
    pass


# --- meter -----------------------------------------------------------------


class MeterDBError(KavyaInputError):
    def __init__(self, message: str, line: int | None = None, source: str = ""):
        self.line = line
        loc = source or "<meter db>"
        if line is not None:
            loc = f"{loc}:{line}"
        super().__init__(f"{loc}: {message}")


class DuplicateName(MeterDBError):
    pass


class MalformedPattern(MeterDBError):
    pass


class FamilyInvariantViolated(MeterDBError):
    pass


class EmptyDatabase(KavyaInputError):
    pass


class NotFuzzy(KavyaError):
    pass


# --- annotations -----------------------------------------------------------


class SchemaError(KavyaValidationError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class UnknownLabel(KavyaValidationError):
    def __init__(self, path: str, label: object, allowed=()):
        self.path = path
        self.label = label
        hint = f" (expected one of: {', '.join(sorted(allowed))})" if allowed else ""
        super().__init__(f"{path}: unknown label {label!r}{hint}")


class HashMismatch(KavyaValidationError):
    def __init__(self, expected: str, actual: str):
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"annotation file is bound to composition {expected}, got {actual}"
        )


class UnknownAlankara(KavyaValidationError):
    pass


class DanglingSpan(KavyaValidationError):
    pass


class DuplicateEntry(KavyaValidationError):
    pass


class ValidationErrors(KavyaValidationError):
    """Several validation failures collected in one raise."""

    def __init__(self, errors: list[KavyaValidationError]):
        self.errors = list(errors)
        lines = "\n".join(f"  - {e}" for e in self.errors)
        super().__init__(f"{len(self.errors)} validation error(s):\n{lines}")


# --- aucitya / config ------------------------------------------------------


class InvalidWeights(KavyaInputError):
    pass


class ConfigError(KavyaInputError):
    pass
