# config/__init__.py
from .settings import (
    THREADS,
    LOG_LEVEL,
    DEFAULT_TOLERANCES,
    SAMPLING_CONFIG,
    EQUIVALENCE_CONFIG,
    CLI_CONFIG,
)

__all__ = [
    'THREADS',
    'LOG_LEVEL',
    'DEFAULT_TOLERANCES',
    'SAMPLING_CONFIG',
    'EQUIVALENCE_CONFIG',
    'CLI_CONFIG',
]
