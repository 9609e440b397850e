from __future__ import annotations

from typing import Optional, Tuple

USAGE_STATUS: int = 2
INTERNAL_STATUS: int = 3


class LatcohError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


class UsageError(LatcohError):
    def __init__(self, message: str):
        super().__init__(USAGE_STATUS, message)


class InvalidActionError(LatcohError):
    def __init__(self, reason: str, m: int, label: str = ""):
        super().__init__(
            USAGE_STATUS,
            f"Invalid action. [Reason={reason}, M={m}, Label={label}]",
        )
        self.reason = reason


class PreconditionError(LatcohError):
    def __init__(self, operation: str, condition: str):
        super().__init__(
            USAGE_STATUS,
            (
                "Precondition unmet."
                f" [Operation={operation}, Condition={condition}]"
            ),
        )


class ResourceLimitError(LatcohError):
    def __init__(self, resource: str, size: int, cap: int):
        super().__init__(
            USAGE_STATUS,
            f"Resource limit exceeded. [Resource={resource}, Size={size},"
            f" Cap={cap}]",
        )
        self.size = size
        self.cap = cap


class ContractViolationError(LatcohError):
    def __init__(self, operation: str, detail: str):
        super().__init__(
            INTERNAL_STATUS,
            f"Contract violated. [Operation={operation}, Detail={detail}]",
        )


class InvariantViolationError(LatcohError):
    def __init__(
        self,
        invariant: str,
        detail: str,
        location: Optional[Tuple[int, ...]] = None,
    ):
        super().__init__(
            INTERNAL_STATUS,
            f"Invariant violated. [Invariant={invariant}, Detail={detail},"
            f" Location={location}]",
        )
        self.invariant = invariant
