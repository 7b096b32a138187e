from typing import Any, Dict, Optional


class MovoidException(Exception):
    """Base exception for all polar space and m-ovoid errors."""
    pass


class ConfigurationException(MovoidException):
    """Exception raised for configuration errors."""
    pass


class FieldError(MovoidException):
    """Exception raised for invalid field parameters or field arithmetic."""
    pass


class CapExceededError(MovoidException):
    """Exception raised when an enumeration would exceed a configured cap."""
    def __init__(self, what: str, value: int, cap: int):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what}: {value} exceeds configured cap {cap}")


class GeometryError(MovoidException):
    """Exception raised for invalid subspaces or incompatible ambient spaces."""
    pass


class FormMismatchError(MovoidException):
    """Exception raised when an enumerated point count disagrees with the formula."""
    def __init__(self, kind: str, expected: int, found: int):
        self.kind = kind
        self.expected = expected
        self.found = found
        super().__init__(f"Form for {kind}: expected {expected} points, enumerated {found}")


class FormNotFoundError(MovoidException):
    """Exception raised when no form provider is registered for a space kind."""
    def __init__(self, kind: str):
        self.kind = kind
        super().__init__(f"Form provider '{kind}' not found")


class WeightError(MovoidException):
    """Exception raised for weight functions unsuitable for an operation."""
    pass


class PointSetFormatError(MovoidException):
    """Exception raised for malformed point-set files."""
    def __init__(self, path: str, line: int, message: str):
        self.path = path
        self.line = line
        self.message = message
        super().__init__(f"{path}:{line}: {message}")


class ConsistencyError(MovoidException):
    """Exception raised when search results contradict a proven bound."""
    def __init__(self, message: str, payload: Optional[Dict[str, Any]] = None):
        self.payload = payload or {}
        super().__init__(message)


class InfeasibleTargetError(MovoidException):
    """Exception raised when a search target m cannot describe a point set of the space."""
    def __init__(self, space: str, m: int):
        self.space = space
        self.m = m
        super().__init__(f"m = {m} is not a feasible target for {space}")
