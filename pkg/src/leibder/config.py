from __future__ import annotations

import logging
from fractions import Fraction
from pathlib import Path
from typing import List

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .linalg import parse_rational


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=(".env",),
        env_prefix="LEIBDER_",
        case_sensitive=False,
        extra="ignore",
    )

    # Comma-separated rationals used to sample parameterized families.
    ALPHA_SAMPLES: str = Field(
        default="2,3,5", description="Generic parameter samples, e.g. 2,3,5 or 1/2,7"
    )
    L4_ALPHA_SAMPLES: str = Field(
        default="0,1", description="Samples for the family whose parameter lies in {0,1}"
    )

    TABLE_WORKERS: int = Field(default=4, description="Concurrent solves in the table command")

    LOG_LEVEL: str = Field(default="WARNING", description="Python logging level name")
    DEFAULT_FORMAT: str = Field(default="text", description="Report format: text, json or latex")

    def alpha_samples(self) -> List[Fraction]:
        return parse_samples(self.ALPHA_SAMPLES)

    def l4_alpha_samples(self) -> List[Fraction]:
        return parse_samples(self.L4_ALPHA_SAMPLES)

    def log_level(self) -> int:
        level = logging.getLevelName(self.LOG_LEVEL.strip().upper())
        return level if isinstance(level, int) else logging.WARNING


def parse_samples(raw: str, *, strict: bool = False) -> List[Fraction]:
    """Comma-separated rationals. With ``strict`` any malformed item raises ValueError."""
    result: List[Fraction] = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            result.append(parse_rational(part))
        except ValueError:
            if strict:
                raise ValueError(f"malformed alpha sample {part!r} in {raw!r}") from None
            # ignore malformed samples
            continue
    return result


def ensure_parent_dir(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
