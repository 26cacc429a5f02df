import logging
import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

logger = logging.getLogger(__name__)


class EngineSettings(BaseModel):
    """Tunables for simulation, verification and the oracle (see env_template.txt)"""

    log_level: str = "INFO"
    max_steps: int = Field(10_000, ge=1)
    verify_state_cap: int = Field(2_000_000, ge=1)
    oracle_state_cap: int = Field(20_000_000, ge=1)
    cover_bound: int = Field(10_000, ge=1)
    paddle_size: int = Field(30, ge=26)
    results_cache: str = ".pursuit_cache/oracle_results.json"
    regression_csv: str = ".pursuit_cache/regression.csv"

    @field_validator("paddle_size")
    @classmethod
    def _even_paddle(cls, value: int) -> int:
        if value % 2:
            raise ValueError("paddle size must be even (cops come in pairs)")
        return value

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if not isinstance(logging.getLevelName(value), int):
            raise ValueError(f"unknown log level: {value}")
        return value


def _from_env() -> EngineSettings:
    raw = {
        "log_level": os.getenv("PURSUIT_LOG_LEVEL"),
        "max_steps": os.getenv("PURSUIT_MAX_STEPS"),
        "verify_state_cap": os.getenv("PURSUIT_VERIFY_STATE_CAP"),
        "oracle_state_cap": os.getenv("PURSUIT_ORACLE_STATE_CAP"),
        "cover_bound": os.getenv("PURSUIT_COVER_BOUND"),
        "paddle_size": os.getenv("PURSUIT_PADDLE_SIZE"),
        "results_cache": os.getenv("PURSUIT_RESULTS_CACHE"),
        "regression_csv": os.getenv("PURSUIT_REGRESSION_CSV"),
    }
    return EngineSettings(**{key: value for key, value in raw.items() if value is not None})


@lru_cache(maxsize=1)
def get_settings() -> EngineSettings:
    load_dotenv()
    settings = _from_env()
    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings
