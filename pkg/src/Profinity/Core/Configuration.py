# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import re
from pathlib import Path
from typing import Annotated

import yaml
from pydantic import (BaseModel, BeforeValidator, ConfigDict, Field,
                      ValidationInfo, field_validator)

from Profinity.Core.Errors import ProfinityError


def power_validator(value):
    """Accept integers or strings like ``"2^16"``."""
    if isinstance(value, str):
        text = value.strip()
        match = re.fullmatch(r'(\d+)\s*\^\s*(\d+)', text)

        if match is not None:
            return int(match.group(1)) ** int(match.group(2))

        if not text.isdigit():
            raise ValueError(f"Invalid value '{value}'. Must be an integer "
                             f"or of the form 'base^exponent'.")

        return int(text)

    return value


Limit = Annotated[int, BeforeValidator(power_validator)]


class OracleSettings(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    enumeration_limit: Limit = Field(default=2 ** 10, gt=0,
                                     alias="enumeration limit")
    character_limit: Limit = Field(default=2 ** 16, gt=0,
                                   alias="character limit")
    max_generators: Limit = Field(default=4096, gt=0, alias="max generators")


class ConstructionSettings(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    family_samples: int = Field(default=3, ge=1, alias="family samples")
    split_depth: int = Field(default=3, ge=1, alias="split depth")

    @field_validator("split_depth")
    @classmethod
    def validate_depth(cls, v, info: ValidationInfo):
        samples = info.data.get("family_samples")
        if samples is not None and v > samples:
            raise ValueError(f"Split depth {v} exceeds family samples "
                             f"{samples}.")
        return v


class MaterializationSettings(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    level: int = Field(default=4, ge=1)
    cap: int = Field(default=1, ge=1)


class DslSettings(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    max_exponent: Limit = Field(default=4096, gt=0, alias="max exponent")
    max_depth: int = Field(default=64, gt=0, le=100, alias="max depth")


class VerifySettings(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    seed: int = Field(default=0)
    corpus_size: int = Field(default=200, gt=0, alias="corpus size")
    snf_matrices: int = Field(default=500, gt=0, alias="snf matrices")
    fuzz_inputs: Limit = Field(default=10 ** 5, gt=0, alias="fuzz inputs")
    workers: int = Field(default=4, ge=1)


class ConfigSchema(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    oracle: OracleSettings = Field(default_factory=OracleSettings)
    construction: ConstructionSettings = Field(
        default_factory=ConstructionSettings)
    materialization: MaterializationSettings = Field(
        default_factory=MaterializationSettings)
    dsl: DslSettings = Field(default_factory=DslSettings)
    verify: VerifySettings = Field(default_factory=VerifySettings)


_active: ConfigSchema | None = None


def load_config(config_file_path: str | Path) -> ConfigSchema:
    try:
        with open(config_file_path) as file:
            conf = yaml.safe_load(file)
    except OSError as error:
        raise ProfinityError(f'Cannot read config file '
                             f'"{config_file_path}": {error.strerror}')
    except yaml.YAMLError as error:
        raise ProfinityError(f'Invalid YAML in config file '
                             f'"{config_file_path}": {error}')

    # Validate config matches schema
    return ConfigSchema(**(conf or {}))


def get_config() -> ConfigSchema:
    global _active

    if _active is None:
        _active = ConfigSchema()

    return _active


def set_config(config: ConfigSchema | None):
    global _active

    _active = config
