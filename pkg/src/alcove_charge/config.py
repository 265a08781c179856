"""Run configuration: root system, model kind, and resolution knobs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

CONFIG_FILENAME = "alcove-charge.json"


@dataclass
class Config:
    family: str = "A"
    rank: int = 2
    model: str = "kleinian"
    resolution: int = 16
    rewrite_bound: int = 100_000
    transport_step: int = 64
    out: Optional[str] = None

    @classmethod
    def load(cls, path: Optional[str] = None) -> "Config":
        """Read the JSON config file if present; defaults otherwise."""
        cfg = cls()
        candidate = Path(path) if path else Path(CONFIG_FILENAME)
        if candidate.is_file():
            data = json.loads(candidate.read_text())
            for key in (
                "family",
                "rank",
                "model",
                "resolution",
                "rewrite_bound",
                "transport_step",
                "out",
            ):
                if key in data:
                    setattr(cfg, key, data[key])
        return cfg

    def merged(self, **overrides) -> "Config":
        out = Config(**vars(self))
        for key, value in overrides.items():
            if value is not None:
                setattr(out, key, value)
        return out
