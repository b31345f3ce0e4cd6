# storage/json_io.py
"""
Deterministic JSON rendering.

Floats are written with 17 significant digits and non-finite floats as
null, so equal inputs always give byte-identical text. Dict order is kept
as built; models emit their keys in a fixed order.
"""

import json
import math
import re
from pathlib import Path
from typing import Any, Union

import numpy as np

from config.settings import CLI_CONFIG

FLOAT_DIGITS = CLI_CONFIG['float_digits']

_MARK = '\u0000f:'
_TOKEN = re.compile(r'"\\u0000f:([^"]*)"')


def _prepare(obj: Any) -> Any:
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not math.isfinite(value):
            return None
        return f"{_MARK}{value:.{FLOAT_DIGITS}g}"
    if isinstance(obj, dict):
        return {str(k): _prepare(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_prepare(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_prepare(v) for v in obj.tolist()]
    return obj


def dumps(obj: Any, indent: int = 2) -> str:
    """json.dumps with fixed 17-digit floats."""
    text = json.dumps(_prepare(obj), indent=indent, ensure_ascii=True)
    return _TOKEN.sub(r'\1', text) + '\n'


def write_json(path: Union[str, Path], obj: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(dumps(obj))
    return path


def read_json(path: Union[str, Path]) -> Any:
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)
