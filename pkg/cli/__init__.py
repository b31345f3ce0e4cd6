# cli/__init__.py
from .options import RunConfig, build_parser
from .commands import COMMANDS, CommandOutcome, roundtrip_error
from .main import main, EXIT_PASS, EXIT_FAIL, EXIT_ERROR

__all__ = [
    'RunConfig',
    'build_parser',
    'COMMANDS',
    'CommandOutcome',
    'roundtrip_error',
    'main',
    'EXIT_PASS',
    'EXIT_FAIL',
    'EXIT_ERROR',
]
