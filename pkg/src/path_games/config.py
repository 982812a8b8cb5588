"""Solver settings, loaded from ``PATH_GAMES_*`` environment variables and optional YAML files."""

import collections.abc
import os
import pathlib
import sys
import typing as t

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from path_games.errors import ConfigurationError

if sys.version_info >= (3, 11):
    from typing import Self
else:
    from typing_extensions import Self

LogLevel: t.TypeAlias = t.Literal["debug", "info", "warning", "error", "critical"]
LogFormat: t.TypeAlias = t.Literal["json", "text"]


class Settings(BaseModel):
    """Solver configuration."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    env_prefix: t.ClassVar[str] = "PATH_GAMES"

    brute_force_cap: int = Field(default=16, ge=1, description="Largest player count the enumeration oracles accept")
    allow_large: bool = Field(default=False, description="Enumerate coalitions beyond the player cap anyway")
    max_iterations: int = Field(
        default=10_000,
        ge=1,
        description="Iteration guard for constraint generation",
    )
    log_level: LogLevel = Field(default="warning", description="Log level")
    log_format: LogFormat = Field(default="json", description="Log format")

    def as_env(self) -> dict[str, str]:
        """Convert the settings to a dictionary of environment variables."""
        env: dict[str, str] = {}
        for key, value in self.model_dump().items():
            if isinstance(value, bool):
                value = str(value).lower()
            env[f"{self.env_prefix}_{key.upper()}"] = str(value)
        return env

    @classmethod
    def from_env(cls, environ: collections.abc.Mapping[str, str] | None = None) -> Self:
        """Settings from ``PATH_GAMES_<FIELD>`` variables; unset fields keep their defaults."""
        environ = os.environ if environ is None else environ
        values = {
            name: environ[f"{cls.env_prefix}_{name.upper()}"]
            for name in cls.model_fields
            if f"{cls.env_prefix}_{name.upper()}" in environ
        }
        return cls._validate(values, source="environment")

    @classmethod
    def from_yaml(cls, path: pathlib.Path | str, *, base: "Settings | None" = None) -> Self:
        """Settings from a YAML mapping, layered over ``base`` (environment settings by default)."""
        path = pathlib.Path(path)
        try:
            with path.open(encoding="utf-8") as f:
                document = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            msg = f"Could not read settings file {path}: {e}"
            raise ConfigurationError(msg) from e

        if document is None:
            document = {}
        if not isinstance(document, collections.abc.Mapping):
            msg = f"Settings file {path} must contain a mapping"
            raise ConfigurationError(msg)

        base = cls.from_env() if base is None else base
        return cls._validate({**base.model_dump(), **document}, source=str(path))

    def updated(self, **overrides: t.Any) -> Self:
        """A copy with the given fields replaced; ``None`` values are ignored."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return self._validate({**self.model_dump(), **changes}, source="overrides")

    @classmethod
    def _validate(cls, values: collections.abc.Mapping[str, t.Any], *, source: str) -> Self:
        try:
            return cls.model_validate(dict(values))
        except ValidationError as e:
            msg = f"Invalid settings from {source}: {e}"
            raise ConfigurationError(msg) from e
