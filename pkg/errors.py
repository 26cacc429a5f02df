"""
Exception hierarchy for the pursuit engine.

Library code raises these; only the CLI in main.py turns them into exit codes.
"""
from typing import Any, Dict, Optional


class PursuitError(Exception):
    """Base class for every error raised by this package"""


class GridConstructionError(PursuitError, ValueError):
    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class FormatError(PursuitError, ValueError):
    """Malformed orientation / quadrangulation text"""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DecompositionError(PursuitError):
    pass


class IllegalMoveError(PursuitError):
    def __init__(self, message: str, cop_index: int, step: int):
        super().__init__(f"step {step}, cop {cop_index}: {message}")
        self.cop_index = cop_index
        self.step = step


class StrategyRefusal(PursuitError):
    """A strategy fragment was activated with its preconditions violated"""

    def __init__(self, message: str, minimal_n: Optional[int] = None):
        super().__init__(message)
        self.minimal_n = minimal_n


class InvariantViolation(PursuitError, AssertionError):
    pass


class LiftConsistencyError(PursuitError):
    pass


class StateCapExceeded(PursuitError):
    def __init__(self, message: str, statistics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.statistics = statistics or {}
