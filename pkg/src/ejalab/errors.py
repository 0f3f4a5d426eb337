class EjalabError(Exception):
    """Base class for every error raised by the package."""


class UsageError(EjalabError, ValueError):
    """Caller passed arguments outside an operation's domain."""


class SpecSyntaxError(UsageError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        pointer = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {pointer}")


class InfeasibleError(EjalabError):
    """No tensor model of the requested kind exists for the algebra."""


class NumericError(EjalabError, ArithmeticError):
    def __init__(self, message: str, residual: float | None = None):
        self.residual = residual
        if residual is not None:
            message = f"{message} (residual {residual:.3e})"
        super().__init__(message)
