"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations

from typing import Any


class DualGridError(Exception):
    """Base class; ``details`` is a JSON-friendly payload for CLI error output."""

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.details = details

    def to_json(self) -> dict:
        return {"error": type(self).__name__, "message": str(self), **self.details}


class MalformedDocument(DualGridError):
    pass


class AsymmetricRotation(DualGridError):
    pass


class EulerViolation(DualGridError):
    pass


class UnknownOuterFace(DualGridError):
    pass


class TooSmall(DualGridError):
    pass


class NotThreeConnected(DualGridError):
    pass


class LabelingNotFound(DualGridError):
    pass


class BadGroupShape(DualGridError):
    pass


class NonIntegerPosition(DualGridError):
    pass


class RepairDivergence(DualGridError):
    pass


class OuterShapeViolation(DualGridError):
    pass


class CoordinateOverflow(DualGridError):
    pass


class UnknownSolid(DualGridError):
    pass


class InvariantViolation(DualGridError):
    pass
