"""
Exception hierarchy shared by every module.

Each error carries the process exit code the CLI maps it to, the same way
request handlers map failures onto HTTP status codes.
"""


class MzvError(Exception):
    exit_code: int = 2

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


class DomainError(MzvError, ValueError):
    """Argument outside the carrier the operation is defined on."""


class LocalityViolation(MzvError):
    """Product of two non-local Chen fractions requested."""


class PoleError(MzvError, ZeroDivisionError):
    pass


class MissingVariable(MzvError, LookupError):
    def __init__(self, variable: int) -> None:
        super().__init__(f"No value assigned to x_{variable}")
        self.variable = variable


class ParseError(MzvError):
    def __init__(self, message: str, offset: int, expected: str | None = None) -> None:
        text = f"{message} at byte {offset}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)
        self.offset = offset
        self.expected = expected


class SchemaError(MzvError):
    pass
