"""
Trace records (schema version 1).

Vertices are written as JSON lists and read back as tuples, so a Coord and the
tuple it reloads as compare and hash equal.
"""
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

TRACE_SCHEMA_VERSION = 1


def _tuplify(value: Any) -> Any:
    if isinstance(value, list):
        return tuple(_tuplify(v) for v in value)
    return value


class OutcomeKind(str, Enum):
    CAPTURED = "captured"
    ESCAPED = "escaped"
    NONCAPTURE = "noncapture"


class Outcome(BaseModel):
    kind: OutcomeKind
    step: Optional[int] = None
    cycle_start: Optional[int] = None

    @classmethod
    def captured(cls, step: int) -> "Outcome":
        return cls(kind=OutcomeKind.CAPTURED, step=step)

    @classmethod
    def escaped(cls, step: int) -> "Outcome":
        return cls(kind=OutcomeKind.ESCAPED, step=step)

    @classmethod
    def noncapture(cls, step: int, cycle_start: int) -> "Outcome":
        return cls(kind=OutcomeKind.NONCAPTURE, step=step, cycle_start=cycle_start)

    def __str__(self) -> str:
        if self.kind is OutcomeKind.CAPTURED:
            return f"Captured({self.step})"
        if self.kind is OutcomeKind.ESCAPED:
            return f"Escaped({self.step})"
        return f"NonCapture(cycle from step {self.cycle_start})"


class TraceStep(BaseModel):
    step: int
    cops: List[Any]
    robber: Any
    annotations: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("cops", mode="after")
    @classmethod
    def _cops_as_tuples(cls, value: List[Any]) -> List[Any]:
        return [_tuplify(c) for c in value]

    @field_validator("robber", mode="after")
    @classmethod
    def _robber_as_tuple(cls, value: Any) -> Any:
        return _tuplify(value)


class Trace(BaseModel):
    schema_version: int = TRACE_SCHEMA_VERSION
    board: str
    controller: str
    robber_policy: str
    max_steps: int
    steps: List[TraceStep] = Field(default_factory=list)
    outcome: Optional[Outcome] = None

    @field_validator("schema_version")
    @classmethod
    def _known_version(cls, value: int) -> int:
        if value != TRACE_SCHEMA_VERSION:
            raise ValueError(f"unsupported trace schema version {value}")
        return value

    @property
    def robber_walk(self) -> List[Any]:
        return [s.robber for s in self.steps]

    @property
    def captured(self) -> bool:
        return self.outcome is not None and self.outcome.kind is OutcomeKind.CAPTURED
