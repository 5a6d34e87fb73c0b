"""
Library defaults loaded from config.yaml.
"""

import logging
import os
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'config.yaml')


@dataclass(frozen=True)
class Settings:
    """Resolved settings; command-line flags are applied with :meth:`override`."""
    field_bound: int = 2 ** 20
    term_budget: int = 2 ** 24
    threads: int = 1
    embedding_tol: float = 1e-9
    weil_tol: float = 1e-6
    root_cluster_tol: float = 1e-6
    output_dir: str = 'output'
    log_level: str = 'WARNING'

    def override(self, **values: Any) -> 'Settings':
        """Return a copy with every non-None keyword applied."""
        return replace(self, **{k: v for k, v in values.items() if v is not None})


def _lookup(data: Dict[str, Any], section: str, key: str, default: Any) -> Any:
    block = data.get(section) or {}
    value = block.get(key, default)
    return default if value is None else value


def load_settings(path: Optional[str] = None) -> Settings:
    """
    Load settings from a YAML file.

    Args:
        path: Config file path (default: config.yaml next to main.py)

    Returns:
        Settings with built-in defaults for anything missing
    """
    path = path or DEFAULT_CONFIG_PATH
    base = Settings()
    if not os.path.exists(path):
        logger.debug("no config file at %s, using built-in defaults", path)
        return base

    with open(path, 'r') as f:
        data = yaml.safe_load(f) or {}

    return Settings(
        field_bound=int(_lookup(data, 'limits', 'field_bound', base.field_bound)),
        term_budget=int(_lookup(data, 'limits', 'term_budget', base.term_budget)),
        threads=int(_lookup(data, 'parallel', 'threads', base.threads)),
        embedding_tol=float(_lookup(data, 'tolerances', 'embedding', base.embedding_tol)),
        weil_tol=float(_lookup(data, 'tolerances', 'weil', base.weil_tol)),
        root_cluster_tol=float(_lookup(data, 'tolerances', 'root_cluster', base.root_cluster_tol)),
        output_dir=str(_lookup(data, 'output', 'directory', base.output_dir)),
        log_level=str(_lookup(data, 'logging', 'level', base.log_level)),
    )
