# storage/__init__.py
from .json_io import dumps, write_json, read_json, FLOAT_DIGITS
from .results import ResultStorage, make_document, load_document, load_pairs, pairs_from_data

__all__ = [
    'dumps',
    'write_json',
    'read_json',
    'FLOAT_DIGITS',
    'ResultStorage',
    'make_document',
    'load_document',
    'load_pairs',
    'pairs_from_data',
]
