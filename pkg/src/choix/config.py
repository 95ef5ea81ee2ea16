"""Run configuration: flags > environment > config file > defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional

from .search import ConfigError

ENV_KEYS = {"CHOIX_CACHE_DIR": "cache_dir", "CHOIX_THREADS": "threads"}


def default_cache_dir() -> Path:
    root = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(root) / "choix"


@dataclass(frozen=True)
class Config:
    cap_digits: int = 7
    limit: int = 10000
    n_max: int = 40
    cache_dir: Optional[Path] = None  # None disables the on-disk cache
    threads: int = 0  # 0 = all cores

    def validate(self) -> "Config":
        if self.limit < 1:
            raise ConfigError("limit must be at least 1")
        if self.n_max < 0:
            raise ConfigError("n_max must be non-negative")
        if self.threads < 0:
            raise ConfigError("threads must be non-negative")
        if self.cap_digits < len(str(self.limit)):
            raise ConfigError(
                f"cap_digits={self.cap_digits} is smaller than the digit count of limit={self.limit}"
            )
        return self


_CONVERT = {
    "cap_digits": int,
    "limit": int,
    "n_max": int,
    "threads": int,
    "cache_dir": Path,
}


def _coerce(key: str, raw: Any, origin: str) -> Any:
    if key not in _CONVERT:
        raise ConfigError(f"{origin}: unknown key {key!r}")
    try:
        return _CONVERT[key](raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{origin}: bad value {raw!r} for {key}") from None


def read_config_file(path: os.PathLike) -> dict[str, Any]:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key] = _coerce(key, value, f"{path}:{lineno}")
    return out


def load_config(
    flags: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
    file: Optional[os.PathLike] = None,
) -> Config:
    """Merge the sources; ``None`` flag values count as unset."""
    merged: dict[str, Any] = {"cache_dir": default_cache_dir()}
    if file is not None:
        merged.update(read_config_file(file))
    env = os.environ if environ is None else environ
    for var, key in ENV_KEYS.items():
        if env.get(var):
            merged[key] = _coerce(key, env[var], var)
    for key, value in (flags or {}).items():
        if value is not None:
            merged[key] = _coerce(key, value, f"--{key}")
    names = {f.name for f in fields(Config)}
    return replace(Config(), **{k: v for k, v in merged.items() if k in names}).validate()
