"""
Jerarquía de errores del motor.

Cada clase sabe con qué código de salida termina la CLI y qué status HTTP
devuelve la API, así las superficies no tienen que adivinar.
"""
from typing import Iterable, Optional


class GmpiError(Exception):
    exit_code: int = 2
    http_status: int = 400

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ContextMismatchError(GmpiError):
    pass


class InvalidArgumentError(GmpiError):
    pass


class UnknownBlockError(GmpiError):
    pass


class ZeroIdealError(GmpiError):
    pass


class IncompleteFamilyError(GmpiError):
    pass


class InclusionViolationError(GmpiError):
    def __init__(self, message: str, block: int, larger: int, smaller: int):
        super().__init__(message)
        self.block = block
        self.larger = larger
        self.smaller = smaller


class DslSyntaxError(GmpiError):
    def __init__(self, message: str, line: int, column: int, expected: Optional[Iterable[str]] = None):
        self.reason = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected or ())))
        detail = f"{line}:{column}: {message}"
        if self.expected:
            detail += f" (se esperaba: {', '.join(self.expected)})"
        super().__init__(detail)


class DslSemanticError(GmpiError):
    pass


class ResourceBoundError(GmpiError):
    exit_code = 3
    http_status = 422
