"""Default numeric settings shared by the library, the CLI and the scripts."""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_PREC = 128
DEFAULT_SLACK = 8
DEFAULT_CAP = 6
PREC_ENV = "CARLITZ_PREC"


@dataclass(frozen=True)
class Settings:
    prec: int = DEFAULT_PREC
    slack: int = DEFAULT_SLACK
    cap: int = DEFAULT_CAP

    @classmethod
    def from_env(cls) -> "Settings":
        raw = os.environ.get(PREC_ENV)
        return cls(prec=int(raw)) if raw else cls()
