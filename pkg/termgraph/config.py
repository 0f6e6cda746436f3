# Runtime settings: size caps and analysis windows
import logging
import os
from pathlib import Path
from typing import Optional, Union

import toml
from pydantic import BaseModel, PositiveInt

logger = logging.getLogger(__name__)

NODE_CAP_ENV = "TG_NODE_CAP"
DEFAULT_CONFIG_FILE = "tg.toml"


class Settings(BaseModel):
    node_cap: PositiveInt = 64  # largest graph accepted by simple-path enumeration
    enum_limit: PositiveInt = 1_000_000  # raw candidates allowed in enumerate_canonical
    unravel_limit: PositiveInt = 1_000_000  # nodes allowed in a depth-bounded unravelling
    window: PositiveInt = 3  # suffix glbs compared when a prefix is open-ended
    max_steps: PositiveInt = 16  # default rewrite cap on the command line


_active = Settings()


def load_settings(path: Optional[Union[str, Path]] = None, env=None) -> Settings:
    """Build settings from defaults, an optional TOML file and the environment"""
    env = os.environ if env is None else env
    values = {}

    if path is None and Path(DEFAULT_CONFIG_FILE).is_file():
        path = DEFAULT_CONFIG_FILE
    if path is not None:
        data = toml.load(str(path))
        values.update(data.get("termgraph", data))
        logger.debug("[settings] loaded %s: %s", path, values)

    if env.get(NODE_CAP_ENV):
        values["node_cap"] = env[NODE_CAP_ENV]

    return Settings(**values)


def get_settings() -> Settings:
    return _active


def use_settings(settings: Settings) -> Settings:
    """Install settings process-wide and return the previous ones"""
    global _active
    previous, _active = _active, settings
    return previous
