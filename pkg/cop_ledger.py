import logging
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from errors import InvariantViolation

logger = logging.getLogger(__name__)

LOG_LIMIT = 20


class CopStatus(Enum):
    IDLE = "idle"
    TRANSIT = "transit"
    COMMITTED = "committed"
    TEMPORARY = "temporary"
    RELEASED = "released"
    CHASER = "chaser"


ACTIVE = (CopStatus.TRANSIT, CopStatus.COMMITTED, CopStatus.TEMPORARY, CopStatus.CHASER)

# (status, role) per cop; this is what composite controllers keep in their memory
FrozenRoles = Tuple[Tuple[str, str], ...]


class CopRecord:
    def __init__(self, index: int, status: CopStatus = CopStatus.IDLE, role: str = ""):
        self.index = index
        self.status = status
        self.role = role
        self.logs: List[str] = []

    def assign(self, status: CopStatus, role: str, note: str = ""):
        self.status = status
        self.role = role
        self._log(f"{status.value}: {role}" + (f" ({note})" if note else ""))

    def release(self, note: str = ""):
        self.status = CopStatus.RELEASED
        self._log(f"released from {self.role}" + (f" ({note})" if note else ""))
        self.role = ""

    def _log(self, message: str):
        self.logs.append(message)
        if len(self.logs) > LOG_LIMIT:
            del self.logs[0]

    @property
    def active(self) -> bool:
        return self.status in ACTIVE


class CopLedger:
    """Who does what among a controller's cops, with an optional cap on active cops"""

    def __init__(self, size: int, budget: Optional[int] = None):
        self.cops = [CopRecord(i) for i in range(size)]
        self.budget = budget

    @classmethod
    def thaw(cls, roles: FrozenRoles, budget: Optional[int] = None) -> "CopLedger":
        ledger = cls(len(roles), budget)
        for record, (status, role) in zip(ledger.cops, roles):
            record.status = CopStatus(status)
            record.role = role
        return ledger

    def freeze(self) -> FrozenRoles:
        return tuple((c.status.value, c.role) for c in self.cops)

    def assign(self, index: int, status: CopStatus, role: str, note: str = ""):
        self.cops[index].assign(status, role, note)
        self._check_budget()

    def release(self, index: int, note: str = ""):
        self.cops[index].release(note)

    def release_holders(self, role: str, note: str = "") -> List[int]:
        """Release every active cop holding exactly role"""
        released = self.with_role(role)
        for i in released:
            self.release(i, note)
        return released

    def free(self) -> List[int]:
        return [c.index for c in self.cops if not c.active]

    def take_free(self, count: int, status: CopStatus, role: str) -> List[int]:
        available = self.free()
        if len(available) < count:
            raise InvariantViolation(f"{role} needs {count} cops, only {len(available)} free")
        chosen = available[:count]
        for i in chosen:
            self.assign(i, status, role)
        return chosen

    def with_role(self, role: str) -> List[int]:
        return [c.index for c in self.cops if c.role == role and c.active]

    def active_count(self) -> int:
        return sum(1 for c in self.cops if c.active)

    def _check_budget(self):
        if self.budget is not None and self.active_count() > self.budget:
            raise InvariantViolation(f"{self.active_count()} active cops exceed the budget of {self.budget}")

    def snapshot(self) -> Dict[str, Any]:
        counts: Dict[str, int] = {}
        for c in self.cops:
            counts[c.status.value] = counts.get(c.status.value, 0) + 1
        return {"active": self.active_count(), "budget": self.budget, "by_status": counts}
