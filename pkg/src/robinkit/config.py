"""Run configuration, layered as flags > ROBIN_* environment > JSON file > defaults."""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Mapping

from .arith import DEFAULT_PRIME_LIMIT
from .errors import DomainError
from .numerics import DEFAULT_MAX_PRECISION, DEFAULT_START_PRECISION

ENV_PREFIX = "ROBIN_"
FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = DEFAULT_MAX_PRECISION  # cap of the precision ladder
    prime_limit: int = DEFAULT_PRIME_LIMIT
    chunk_size: int = 1 << 16
    output_format: str = "json"
    sweep_ceiling: int = 10**6
    workers: int = 1

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name in _INT_FIELDS and (not isinstance(v, int) or v <= 0):
                raise DomainError(f"{f.name} must be a positive integer, got {v!r}")
        if self.precision_bits < DEFAULT_START_PRECISION:
            raise DomainError(f"precision_bits must be >= {DEFAULT_START_PRECISION}")
        if self.output_format not in FORMATS:
            raise DomainError(f"output_format must be one of {FORMATS}")

    def snapshot(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


_INT_FIELDS = frozenset(f.name for f in fields(RunConfig) if f.name != "output_format")


def _coerce(name: str, raw: Any) -> Any:
    if name in _INT_FIELDS:
        try:
            return int(raw)
        except (TypeError, ValueError):
            raise DomainError(f"{name} must be an integer, got {raw!r}") from None
    return str(raw)


def _from_env(env: Mapping[str, str]) -> dict[str, Any]:
    out = {}
    for f in fields(RunConfig):
        key = ENV_PREFIX + f.name.upper()
        if key in env:
            out[f.name] = _coerce(f.name, env[key])
    return out


def _from_file(path: str | os.PathLike | None) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read config file {path}: {exc}") from None
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    return {k: _coerce(k, v) for k, v in data.items()}


def load_config(flags: Mapping[str, Any] | None = None, *, config_file=None,
                env: Mapping[str, str] | None = None) -> RunConfig:
    """Merge the layers; ``None`` flag values fall through to lower layers."""
    env = os.environ if env is None else env
    if config_file is None:
        config_file = env.get(ENV_PREFIX + "CONFIG")
    merged: dict[str, Any] = {}
    merged.update(_from_file(config_file))
    merged.update(_from_env(env))
    merged.update({k: v for k, v in (flags or {}).items() if v is not None})
    return RunConfig(**merged)
