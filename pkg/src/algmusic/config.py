"""``key=value`` configuration with environment overrides.

Precedence, lowest first: built-in defaults, the config file, ``ALGMUSIC_*``
environment variables, explicit command-line flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Mapping

from .counterpoint import PolarityVariant
from .report import FORMATS

ENV_PREFIX = "ALGMUSIC_"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    polarity_variant: PolarityVariant = PolarityVariant.NORMALIZED
    default_format: str = "md"

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "polarity_variant", PolarityVariant(self.polarity_variant))
        except ValueError:
            choices = ", ".join(v.value for v in PolarityVariant)
            raise ConfigError(f"polarity_variant must be one of {choices}, got {self.polarity_variant!r}") from None
        if self.default_format not in FORMATS:
            raise ConfigError(f"default_format must be one of {FORMATS}, got {self.default_format!r}")


_KEYS = {f.name for f in fields(Config)}


def parse_config(text: str, source: str = "<config>") -> dict[str, str]:
    values = {}
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{n}: expected key=value")
        key, value = (p.strip() for p in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"{source}:{n}: unknown key {key!r}")
        values[key] = value
    return values


def load_config(path: str | Path | None = None, environ: Mapping[str, str] | None = None) -> Config:
    environ = os.environ if environ is None else environ
    values: dict[str, str] = {}
    if path is not None:
        p = Path(path)
        try:
            values.update(parse_config(p.read_text(encoding="utf-8"), str(p)))
        except OSError as exc:
            raise ConfigError(f"cannot read config {p}: {exc}") from None
    for key in _KEYS:
        env = environ.get(ENV_PREFIX + key.upper())
        if env:
            values[key] = env.strip()
    return replace(Config(), **values)
