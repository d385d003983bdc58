from __future__ import annotations

class RevsieveError(Exception):
    pass

class DomainError(RevsieveError, ValueError):
    pass

class AdvisoryError(DomainError):

    def __init__(self, message: str, *, alternative: str) -> None:
        super().__init__(f"{message} (use {alternative} instead)")
        self.alternative = alternative

class ResourceError(RevsieveError, MemoryError):

    def __init__(self, message: str, *, required: int, available: int) -> None:
        super().__init__(f"{message}: required {required}, available {available}")
        self.required = required
        self.available = available

class ConsistencyError(RevsieveError, AssertionError):

    def __init__(self, message: str, *, first_difference: int | None = None) -> None:
        if first_difference is not None:
            message = f"{message} (first differing value: {first_difference})"
        super().__init__(message)
        self.first_difference = first_difference

class VerificationError(RevsieveError):

    def __init__(self, message: str, *, mismatches: list[tuple[int, int, int]]) -> None:
        super().__init__(message)
        # (n, computed, expected)
        self.mismatches = mismatches
