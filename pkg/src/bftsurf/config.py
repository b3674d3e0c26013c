"""``key=value`` run configuration: search bound, oracle budget, worker count."""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

KEYS = {
    "search.bound": "search_bound",
    "oracle.budget": "oracle_budget",
    "parallel.width": "parallel_width",
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    search_bound: int = 200
    oracle_budget: int = 10**6
    parallel_width: int = 1


def parse_config(text: str, source: str = "<config>") -> Config:
    values: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = (s.strip() for s in line.partition("="))
        if not sep:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {raw.strip()!r}")
        if key not in KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}; known keys: {', '.join(KEYS)}")
        try:
            n = int(val)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: {key} needs an integer, got {val!r}") from None
        if n < 1:
            raise ConfigError(f"{source}:{lineno}: {key} must be positive")
        values[KEYS[key]] = n
    return Config(**values)


def load_config(path: str | Path | None) -> Config:
    if path is None:
        return Config()
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {p}: {e.strerror}") from None
    return parse_config(text, str(p))


def config_dict(cfg: Config) -> dict[str, int]:
    inv = {v: k for k, v in KEYS.items()}
    return {inv[f.name]: getattr(cfg, f.name) for f in fields(cfg)}
