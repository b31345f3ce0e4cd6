# storage/results.py
"""
JSON persistence for run outputs.

Every file is a document {"kind": ..., "items": [...], ...}. Pair inputs
may also be a bare MatrixPair object or a list of them, and any item may
be a Wilson chart point {"lambdas": ..., "alphas": ...} instead of a pair.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from matpair.errors import CMSpaceError, SchemaError
from matpair.membership import from_wilson_chart
from matpair.models import MatrixPair, WilsonChartPoint
from .json_io import read_json

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def make_document(kind: str, items: List[Any], **extra) -> Dict[str, Any]:
    """A result document; extra keys follow kind and items in the given order."""
    document = {'kind': kind, 'items': items}
    document.update(extra)
    return document


def load_document(path: PathLike) -> Dict[str, Any]:
    """
    Reads a JSON file.

    Raises:
        OSError: the file cannot be read
        SchemaError: the content is not JSON
    """
    try:
        data = read_json(path)
    except json.JSONDecodeError as e:
        logger.error("malformed JSON in %s: %s", path, e)
        raise SchemaError(f"{path}: malformed JSON ({e.msg} at line {e.lineno})") from e
    return data


def _pair_from_item(item: Any) -> MatrixPair:
    if isinstance(item, dict) and 'lambdas' in item:
        return from_wilson_chart(WilsonChartPoint.from_dict(item))
    return MatrixPair.from_dict(item)


def pairs_from_data(data: Any, source: str = '<input>') -> List[MatrixPair]:
    """Accepts a pairs document, a list of pair objects or a single pair object."""
    if isinstance(data, dict) and 'items' in data:
        data = data['items']
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list) or not data:
        raise SchemaError(f"{source}: expected a pairs document, a pair or a list of pairs")
    pairs = []
    for index, item in enumerate(data):
        try:
            pairs.append(_pair_from_item(item))
        except CMSpaceError as e:
            raise SchemaError(f"{source}: item {index}: {e}") from e
    return pairs


def load_pairs(path: PathLike) -> List[MatrixPair]:
    return pairs_from_data(load_document(path), str(path))


class ResultStorage:
    """
    A directory of result documents, one JSON file each.
    """

    def __init__(self, storage_dir: PathLike):
        self.storage_dir = Path(storage_dir)

    def _file_paths(self) -> List[Path]:
        return sorted(self.storage_dir.glob('*.json'))

    def named_documents(self) -> List[Tuple[str, Dict[str, Any]]]:
        """
        (name, document) in name order.

        Raises:
            SchemaError: a file cannot be read or is not JSON
        """
        documents = []
        for file_path in self._file_paths():
            try:
                documents.append((file_path.stem, load_document(file_path)))
            except OSError as e:
                logger.error("cannot read result %s: %s", file_path, e)
                raise SchemaError(f"{file_path}: unreadable result file ({e})") from e
        return documents
