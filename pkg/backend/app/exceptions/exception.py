from typing import Any, Optional

from app.core.base_enums import ExitCode


class LabException(Exception):
    """Base lab exception"""

    def __init__(
        self,
        message: str,
        exit_code: int = ExitCode.EVALUATION_ERROR,
        detail: Optional[Any] = None,
    ):
        super().__init__(message)
        self.message = message
        self.exit_code = int(exit_code)
        self.detail = detail


class ValidationException(LabException):
    """Exception raised when parameters are invalid"""

    def __init__(self, message: str = "Validation failed", detail: Optional[Any] = None):
        super().__init__(message=message, exit_code=ExitCode.PARSE_ERROR, detail=detail)


class NotFoundException(LabException):
    """Exception raised when a catalog entry or scenario kind is unknown"""

    def __init__(self, message: str = "Resource not found", detail: Optional[Any] = None):
        super().__init__(message=message, exit_code=ExitCode.PARSE_ERROR, detail=detail)


class ConfigParseException(LabException):
    """Exception raised when a scenario config cannot be parsed"""

    def __init__(self, message: str = "Config parse error", detail: Optional[Any] = None):
        super().__init__(message=message, exit_code=ExitCode.PARSE_ERROR, detail=detail)


class EvaluationException(LabException):
    """Exception raised when a numerical evaluation fails"""

    def __init__(self, message: str = "Evaluation error", detail: Optional[Any] = None):
        super().__init__(message=message, exit_code=ExitCode.EVALUATION_ERROR, detail=detail)


class QuadratureException(EvaluationException):
    """Exception raised for a non-finite integrand value at a quadrature node"""

    def __init__(self, message: str = "Non-finite integrand", node: Optional[Any] = None):
        super().__init__(message=message, detail={"node": node})
        self.node = node


class SemigroupOverflowException(EvaluationException):
    """Exception raised when the matrix exponential overflows"""

    def __init__(self, message: str = "Matrix exponential overflow", detail: Optional[Any] = None):
        super().__init__(message=message, detail=detail)


class VerdictFailureException(LabException):
    """Exception raised when scenario verdicts do not match expectations"""

    def __init__(self, message: str = "Verdict failure", detail: Optional[Any] = None):
        super().__init__(message=message, exit_code=ExitCode.VERDICT_FAILURE, detail=detail)
