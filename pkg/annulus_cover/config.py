"""
Annulus Cover Configuration
Environment-driven settings for logging, oracle budgets, batch runs and rendering
"""

import os
from typing import Dict, Optional, Type

from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class AnnulusSettings(BaseSettings):
    """Base settings; every field can be overridden with an ANNULUS_* variable"""

    model_config = SettingsConfigDict(env_prefix='ANNULUS_', extra='ignore')

    log_level: str = 'INFO'
    log_file: Optional[str] = None

    oracle_max_reds: int = 6
    oracle_max_blues: int = 6
    oracle_max_candidates: int = 2_000_000

    batch_workers: int = 1
    svg_size: int = 480
    default_seed: int = 1


class DevelopmentSettings(AnnulusSettings):
    log_level: str = 'DEBUG'


class TestingSettings(AnnulusSettings):
    log_level: str = 'DEBUG'
    log_file: Optional[str] = None
    batch_workers: int = 1


class ProductionSettings(AnnulusSettings):
    log_level: str = 'WARNING'


CONFIG_BY_NAME: Dict[str, Type[AnnulusSettings]] = {
    'development': DevelopmentSettings,
    'testing': TestingSettings,
    'production': ProductionSettings,
}


def get_config(config_name: Optional[str] = None) -> AnnulusSettings:
    """Return settings for the named environment (defaults to ANNULUS_ENV, then development)"""
    name = config_name or os.getenv('ANNULUS_ENV', 'development')
    settings_class = CONFIG_BY_NAME.get(name.lower(), DevelopmentSettings)
    return settings_class()
