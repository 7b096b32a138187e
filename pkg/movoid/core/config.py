from typing import Optional

from dotenv import load_dotenv
from pydantic import field_validator
from pydantic_settings import BaseSettings

# Load a local .env before the settings object reads the environment
load_dotenv()


class Settings(BaseSettings):
    # Fields
    MAX_FIELD_ORDER: int = 2**20
    CONWAY_MAX_ORDER: int = 2**16
    MODULUS_TABLE_PATH: Optional[str] = None  # JSON {"p^k": [c0, ..., ck]} override

    # Enumeration caps
    POINT_CAP: int = 10**6
    POLAR_POINT_CAP: int = 200_000
    GENERATOR_CAP: int = 50_000
    IDENTITY_THETA_CAP: int = 10**6
    IDENTITY_CELL_CAP: int = 5 * 10**7  # ambient points x points of pi
    PERP_BLOCK_CELLS: int = 2**22  # cells per block when summing over perps

    # Search
    NODE_BUDGET: int = 10**9
    CHECKPOINT_EVERY: int = 10**6
    WORKERS: int = 1

    # Output & logging
    OUTPUT_FORMAT: str = "json"  # Options: json, table, csv
    LOG_LEVEL: str = "WARNING"
    LOG_JSON: bool = False

    # Celery Configuration
    CELERY_BROKER_URL: str = "redis://localhost:6379/0"
    CELERY_RESULT_BACKEND: str = "redis://localhost:6379/0"
    CELERY_TASK_ALWAYS_EAGER: bool = True  # in-process unless a worker pool is running
    CELERY_WORKER_CONCURRENCY: int = 4

    model_config = {
        "env_prefix": "MOVOID_",
        "env_file": ".env",
        "case_sensitive": True,
        "extra": "ignore",
    }

    @field_validator(
        "MAX_FIELD_ORDER",
        "CONWAY_MAX_ORDER",
        "POINT_CAP",
        "POLAR_POINT_CAP",
        "GENERATOR_CAP",
        "IDENTITY_THETA_CAP",
        "IDENTITY_CELL_CAP",
        "PERP_BLOCK_CELLS",
        "NODE_BUDGET",
        "CHECKPOINT_EVERY",
        "WORKERS",
        "CELERY_WORKER_CONCURRENCY",
    )
    @classmethod
    def _positive(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("must be positive")
        return value

    @field_validator("OUTPUT_FORMAT")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in ("json", "table", "csv"):
            raise ValueError(f"unknown output format '{value}'")
        return value


# Initialize settings
settings = Settings()
