"""
Trace files: one JSON document per trace.
"""
import logging
from pathlib import Path
from typing import Union

from engine.state import Trace

logger = logging.getLogger(__name__)


def save_trace(trace: Trace, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(trace.model_dump_json(indent=2))
    logger.info(f"💾 Trace with {len(trace.steps)} steps written to {path}")
    return path


def load_trace(path: Union[str, Path]) -> Trace:
    trace = Trace.model_validate_json(Path(path).read_text())
    logger.debug(f"Loaded trace {trace.controller} vs {trace.robber_policy} from {path}")
    return trace
