"""
Configuration management for truncbt
"""
import posixpath
from typing import Any, Dict, List, Optional, Type, TypeVar

import yaml
from fsspec import AbstractFileSystem
from fsspec.implementations.local import LocalFileSystem
from pydantic import BaseSettings, Field, root_validator, validator
from pydantic.env_settings import InitSettingsSource

from truncbt.constants import CONFIG_FILE_NAME, CONFIG_SECTION


def _set_location_init_source(init_source: InitSettingsSource):
    def inner(settings: "TruncBTConfigBase"):
        for arg in ("config_path", "config_fs"):
            if arg in init_source.init_kwargs:
                settings.__dict__[arg] = init_source.init_kwargs[arg]
        return {}

    return inner


def yaml_config_settings_source(section: Optional[str]):
    """
    A settings source that loads variables from a section of the yaml file
    next to `config_path` (current directory by default)
    """

    def inner(settings: BaseSettings) -> Dict[str, Any]:
        encoding = settings.__config__.env_file_encoding
        fs = getattr(settings, "config_fs", None) or LocalFileSystem()
        config_path = getattr(settings, "config_path", "") or "."
        config_file = posixpath.join(config_path, CONFIG_FILE_NAME)
        if not fs.exists(config_file):
            return {}
        with fs.open(config_file, encoding=encoding) as f:
            conf = yaml.safe_load(f)
        if conf and section:
            conf = conf.get(section, {})
        return {k.upper(): v for k, v in conf.items()} if conf else {}

    return inner


T = TypeVar("T", bound="TruncBTConfigBase")


class TruncBTConfigBase(BaseSettings):
    """Base for truncbt settings that can also be read from a yaml file"""

    config_path: str = ""
    config_fs: Optional[AbstractFileSystem] = None

    class Config:
        env_prefix = "truncbt_"
        env_file_encoding = "utf-8"
        section: Optional[str] = None

        @classmethod
        def customise_sources(
            cls,
            init_settings,
            env_settings,
            file_secret_settings,
        ):
            return (
                _set_location_init_source(init_settings),
                init_settings,
                env_settings,
                yaml_config_settings_source(cls.section),
                file_secret_settings,
            )

    @root_validator(pre=True)
    def ignore_case(
        cls, value: Any
    ):  # pylint: disable=no-self-argument  # noqa: B902
        new_value = {}
        if isinstance(value, dict):
            for key, val in value.items():
                if key.upper() in cls.__fields__:
                    key = key.upper()
                if key.lower() in cls.__fields__:
                    key = key.lower()
                new_value[key] = val
        return new_value


class TruncBTConfig(TruncBTConfigBase):
    """Core truncbt config"""

    class Config:
        section = CONFIG_SECTION

    LOG_LEVEL: str = "INFO"
    DEBUG: bool = False
    TESTS: bool = False
    EMOJIS: bool = True
    ORBIT_BUDGET: int = Field(default=5_000_000, gt=0)
    ENUMERATION_BUDGET: int = Field(default=10_000_000, gt=0)
    RING_ENUMERATION_CAP: int = Field(default=10_000_000, gt=0)
    SEED: int = 0
    CORPUS_SIZE: int = Field(default=1000, gt=0)
    FIT_RESIDUAL_THRESHOLD: float = Field(default=0.2, ge=0)
    FIT_DEGREES: str = "1,2,3"

    @validator("FIT_DEGREES")
    def check_fit_degrees(cls, value):  # pylint: disable=no-self-argument
        degrees = [int(v) for v in value.split(",") if v.strip()]
        if len(degrees) < 2 or any(d < 1 for d in degrees):
            raise ValueError(
                "FIT_DEGREES needs at least two positive residue degrees"
            )
        return value

    @property
    def fit_degrees(self) -> List[int]:
        return [
            int(v)
            for v in self.FIT_DEGREES.split(",")  # pylint: disable=no-member
            if v.strip()
        ]


LOCAL_CONFIG = TruncBTConfig()


def project_config(
    path: Optional[str],
    fs: Optional[AbstractFileSystem] = None,
    section: Type[T] = TruncBTConfig,  # type: ignore[assignment]
) -> T:
    if fs is None:
        fs = LocalFileSystem()
    return section(config_path=path or "", config_fs=fs)
