"""
Exact cop numbers of small digraphs by backward induction.

Positions are (sorted cop tuple, robber vertex, side to move). Capture
positions seed a reverse BFS; a robber-to-move position becomes a cop win
once every robber reply is one, tracked with a per-position counter of
unresolved replies. Distances count half-moves to capture.
"""
import itertools
import json
import logging
import os
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from engine.controller import PositionalController
from errors import StateCapExceeded, StrategyRefusal
from grid_model.digraph import Digraph, Vertex
from settings import get_settings

logger = logging.getLogger(__name__)

UNRESOLVED = -1

CopTuple = Tuple[int, ...]


@dataclass
class SolverResult:
    digraph: Digraph
    k: int
    cops_win: bool
    placement: Optional[Tuple[Vertex, ...]]
    capture_time: Optional[int]
    states: int
    seconds: float
    multisets: List[CopTuple] = field(repr=False, default_factory=list)
    cop_dist: np.ndarray = field(repr=False, default=None)
    robber_dist: np.ndarray = field(repr=False, default=None)

    def multiset_index(self) -> Dict[CopTuple, int]:
        return {m: i for i, m in enumerate(self.multisets)}


class CopNumberOracle:
    def __init__(self, state_cap: Optional[int] = None):
        self.state_cap = state_cap

    def _cap(self) -> int:
        return self.state_cap if self.state_cap is not None else get_settings().oracle_state_cap

    def solve(self, digraph: Digraph, k: int) -> SolverResult:
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        size = len(digraph)
        if size == 0:
            raise ValueError("the oracle needs a non-empty digraph")

        multiset_count = _multiset_count(size, k)
        states = 2 * multiset_count * size
        if states > self._cap():
            raise StateCapExceeded(f"{states} positions for {k} cops on {digraph.name} exceed the cap of {self._cap()}",
                                   {"states": states, "cap": self._cap(), "k": k, "vertices": size})

        began = time.perf_counter()
        moves = [tuple(sorted({v, *out})) for v, out in enumerate(digraph.index_adjacency())]
        backs: List[set] = [set([v]) for v in range(size)]
        for v, out in enumerate(digraph.index_adjacency()):
            for u in out:
                backs[u].add(v)
        back_moves = [tuple(sorted(b)) for b in backs]

        multisets = list(itertools.combinations_with_replacement(range(size), k))
        index = {m: i for i, m in enumerate(multisets)}

        cop_dist = np.full((len(multisets), size), UNRESOLVED, dtype=np.int32)
        robber_dist = np.full((len(multisets), size), UNRESOLVED, dtype=np.int32)
        pending = np.array([len(moves[r]) for r in range(size)], dtype=np.int32)
        counters = np.tile(pending, (len(multisets), 1))

        # (side, multiset, robber); side 0 = cops to move
        queue: deque = deque()
        for mi, cops in enumerate(multisets):
            for c in set(cops):
                cop_dist[mi, c] = 0
                robber_dist[mi, c] = 0
                queue.append((0, mi, c))
                queue.append((1, mi, c))

        while queue:
            side, mi, r = queue.popleft()
            if side == 0:
                d = cop_dist[mi, r]
                # robber-to-move positions whose reply r lands here
                for prev in back_moves[r]:
                    if robber_dist[mi, prev] != UNRESOLVED:
                        continue
                    counters[mi, prev] -= 1
                    if counters[mi, prev] == 0:
                        robber_dist[mi, prev] = d + 1
                        queue.append((1, mi, prev))
            else:
                d = robber_dist[mi, r]
                for earlier in _predecessor_multisets(multisets[mi], back_moves):
                    ei = index[earlier]
                    if cop_dist[ei, r] == UNRESOLVED:
                        cop_dist[ei, r] = d + 1
                        queue.append((0, ei, r))

        # the robber places after seeing the cops, so a placement must win against every start
        worst = np.where((cop_dist == UNRESOLVED).any(axis=1), np.iinfo(np.int32).max, cop_dist.max(axis=1))
        best = int(np.argmin(worst))
        cops_win = bool(worst[best] != np.iinfo(np.int32).max)
        placement = tuple(digraph.vertices[c] for c in multisets[best]) if cops_win else None

        result = SolverResult(digraph=digraph, k=k, cops_win=cops_win, placement=placement,
                              capture_time=int(worst[best]) if cops_win else None, states=states,
                              seconds=time.perf_counter() - began, multisets=multisets,
                              cop_dist=cop_dist, robber_dist=robber_dist)
        icon = "✅" if cops_win else "❌"
        logger.info(f"{icon} {k} cop(s) on {digraph.name}: {'win' if cops_win else 'lose'} "
                    f"({states} positions, {result.seconds:.3f}s)")
        return result

    def cop_win_with_k(self, digraph: Digraph, k: int) -> bool:
        return self.solve(digraph, k).cops_win

    def cop_number(self, digraph: Digraph, k_max: int, cache: Optional["ResultsCache"] = None) -> Optional[int]:
        """Least k <= k_max for which the cops win, None meaning more than k_max"""
        if k_max < 1:
            raise ValueError(f"k_max must be at least 1, got {k_max}")
        for k in range(1, k_max + 1):
            cached = cache.get(digraph, k) if cache is not None else None
            if cached is not None:
                win = cached["win"]
            else:
                result = self.solve(digraph, k)
                win = result.cops_win
                if cache is not None:
                    cache.put(result)
            if win:
                return k
        return None


def check_fixpoint(result: SolverResult) -> bool:
    """Re-apply the labelling rule to every position; True when nothing would change"""
    digraph = result.digraph
    size = len(digraph)
    moves = [tuple(sorted({v, *out})) for v, out in enumerate(digraph.index_adjacency())]
    index = result.multiset_index()
    for mi, cops in enumerate(result.multisets):
        for r in range(size):
            captured = r in cops
            cop_win = captured or any(
                result.robber_dist[index[tuple(sorted(step))], r] != UNRESOLVED
                for step in itertools.product(*(moves[c] for c in cops)))
            robber_win = captured or all(result.cop_dist[mi, reply] != UNRESOLVED for reply in moves[r])
            if cop_win != (result.cop_dist[mi, r] != UNRESOLVED):
                return False
            if robber_win != (result.robber_dist[mi, r] != UNRESOLVED):
                return False
    return True


def _multiset_count(size: int, k: int) -> int:
    count = 1
    for i in range(k):
        count = count * (size + i) // (i + 1)
    return count


def _predecessor_multisets(cops: CopTuple, back_moves: Sequence[Tuple[int, ...]]):
    seen = set()
    for combo in itertools.product(*(back_moves[c] for c in cops)):
        key = tuple(sorted(combo))
        if key not in seen:
            seen.add(key)
            yield key


class OracleStrategyController(PositionalController):
    """Plays a solved game: every cop move strictly lowers the distance to capture"""

    def __init__(self, result: SolverResult):
        if not result.cops_win:
            raise StrategyRefusal(f"{result.k} cops lose on {result.digraph.name}; there is no strategy to extract")
        super().__init__(result.digraph)
        self.result = result
        self.name = f"oracle{result.k}"
        self._index = result.multiset_index()

    @property
    def cop_count(self) -> int:
        return self.result.k

    def place(self) -> Tuple[Vertex, ...]:
        return tuple(self.result.placement)

    def respond(self, cops: Tuple[Vertex, ...], robber: Vertex) -> Tuple[Vertex, ...]:
        digraph = self.digraph
        r = digraph.index_of(robber)
        best: Optional[Tuple[int, Tuple[Vertex, ...]]] = None
        for step in itertools.product(*(digraph.moves(c) for c in cops)):
            key = tuple(sorted(digraph.index_of(v) for v in step))
            d = int(self.result.robber_dist[self._index[key], r])
            if d == UNRESOLVED:
                continue
            if best is None or d < best[0]:
                best = (d, tuple(step))
        if best is None:
            logger.warning(f"⚠️ {self.name}: no winning move from {cops} against {robber}")
            return tuple(cops)
        return best[1]


class ResultsCache:
    """Oracle verdicts on disk, keyed by the digraph's canonical hash and k"""

    def __init__(self, path: Optional[str] = None):
        self.path = path or get_settings().results_cache
        self.entries: Dict[str, Dict[str, Any]] = {}
        self.load()

    @staticmethod
    def key(digraph: Digraph, k: int) -> str:
        return f"{digraph.canonical_hash()}:{k}"

    def load(self):
        if not os.path.exists(self.path):
            return
        try:
            with open(self.path, "r") as f:
                self.entries = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"⚠️ Results cache {self.path} unreadable, starting empty: {e}")
            self.entries = {}

    def get(self, digraph: Digraph, k: int) -> Optional[Dict[str, Any]]:
        return self.entries.get(self.key(digraph, k))

    def put(self, result: SolverResult):
        self.entries[self.key(result.digraph, result.k)] = {
            "board": result.digraph.name,
            "win": result.cops_win,
            "placement": [list(v) if isinstance(v, tuple) else v for v in result.placement or ()],
            "states": result.states,
            "seconds": result.seconds,
        }
        self.save()

    def save(self):
        os.makedirs(os.path.dirname(self.path) or ".", exist_ok=True)
        with open(self.path, "w") as f:
            json.dump(self.entries, f, indent=2, sort_keys=True)
        logger.debug(f"💾 Saved {len(self.entries)} oracle results to {self.path}")


REGRESSION_COLUMNS = ["grid", "k", "verdict", "states", "seconds"]


def append_regression(rows: Sequence[Dict[str, Any]], path: Optional[str] = None) -> pd.DataFrame:
    path = path or get_settings().regression_csv
    frame = pd.DataFrame(list(rows), columns=REGRESSION_COLUMNS)
    if os.path.exists(path):
        frame = pd.concat([pd.read_csv(path), frame], ignore_index=True)
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    frame.to_csv(path, index=False)
    logger.info(f"💾 Regression table {path} now has {len(frame)} rows")
    return frame
