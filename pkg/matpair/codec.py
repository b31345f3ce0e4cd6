# matpair/codec.py
"""
JSON encodings for complex scalars and matrices.

A complex number is a two-element list [re, im]; a matrix is a row-major
list of rows of such pairs.
"""

import math
from typing import Any, List, Sequence

import numpy as np

from .errors import SchemaError


def complex_to_json(z: complex) -> List[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(value: Any) -> complex:
    """Decodes [re, im]; a bare real number is accepted as well."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        re, im = float(value), 0.0
    elif isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            re, im = float(value[0]), float(value[1])
        except (TypeError, ValueError) as e:
            raise SchemaError(f"complex entry must be [re, im], got {value!r}") from e
    else:
        raise SchemaError(f"complex entry must be [re, im], got {value!r}")
    if not (math.isfinite(re) and math.isfinite(im)):
        raise SchemaError(f"non-finite complex entry {value!r}")
    return complex(re, im)


def vector_to_json(values: Sequence[complex]) -> List[List[float]]:
    return [complex_to_json(z) for z in values]


def vector_from_json(value: Any) -> np.ndarray:
    if not isinstance(value, (list, tuple)):
        raise SchemaError(f"expected a list of [re, im] entries, got {type(value).__name__}")
    return np.array([complex_from_json(v) for v in value], dtype=complex)


def matrix_to_json(matrix: np.ndarray) -> List[List[List[float]]]:
    return [vector_to_json(row) for row in np.asarray(matrix)]


def matrix_from_json(value: Any) -> np.ndarray:
    if not isinstance(value, (list, tuple)) or not value:
        raise SchemaError("matrix must be a non-empty list of rows")
    rows = [vector_from_json(row) for row in value]
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise SchemaError("matrix rows have different lengths")
    return np.array(rows, dtype=complex)
