# invariants/fingerprint.py
"""
Conjugation-invariant data of a pair: the eigenvalue maps and traces of
short words in X and Y.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from config.settings import EQUIVALENCE_CONFIG
from matpair.codec import complex_from_json, complex_to_json, vector_from_json, vector_to_json
from matpair.errors import SchemaError
from matpair.membership import order_eigenvalues, require_member
from matpair.models import MatrixPair, Tolerances

logger = logging.getLogger(__name__)


def sorted_eigenvalues(M: np.ndarray) -> np.ndarray:
    values = np.linalg.eigvals(M)
    return values[order_eigenvalues(values)]


def eigen_map(p: MatrixPair, tol: Optional[Tolerances] = None) -> Tuple[np.ndarray, np.ndarray]:
    """(eigenvalues of X, eigenvalues of Y), each sorted by (Re, Im)."""
    require_member(p, tol)
    return sorted_eigenvalues(p.X), sorted_eigenvalues(p.Y)


def _is_necklace(word: str) -> bool:
    return all(word <= word[k:] + word[:k] for k in range(1, len(word)))


def necklace_words(max_length: int) -> List[str]:
    """
    Words over {X, Y} up to max_length that are least among their rotations.

    Ordered by length, then lexicographically. Since tr is cyclic these
    carry every trace of a word of that length.
    """
    words = []
    for length in range(1, max_length + 1):
        for letters in itertools.product('XY', repeat=length):
            word = ''.join(letters)
            if _is_necklace(word):
                words.append(word)
    return words


def word_trace(p: MatrixPair, word: str) -> complex:
    factors = [p.X if letter == 'X' else p.Y for letter in word]
    return complex(np.trace(reduce(np.matmul, factors)))


@dataclass(frozen=True)
class InvariantFingerprint:
    """
    Attributes:
        eig_x: eigenvalues of X, sorted by (Re, Im)
        eig_y: eigenvalues of Y, sorted by (Re, Im)
        trace_words: necklace word -> trace, in length-then-lex order
    """
    eig_x: np.ndarray
    eig_y: np.ndarray
    trace_words: Dict[str, complex] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'eigX': vector_to_json(self.eig_x),
            'eigY': vector_to_json(self.eig_y),
            'trace_words': {word: complex_to_json(value) for word, value in self.trace_words.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'InvariantFingerprint':
        try:
            words = data['trace_words']
            if not isinstance(words, dict):
                raise SchemaError("trace_words must be an object")
            for word in words:
                if not word or set(word) - {'X', 'Y'}:
                    raise SchemaError(f"trace word {word!r} is not a word over X, Y")
            ordered = sorted(words, key=lambda w: (len(w), w))
            return cls(eig_x=vector_from_json(data['eigX']),
                       eig_y=vector_from_json(data['eigY']),
                       trace_words={w: complex_from_json(words[w]) for w in ordered})
        except KeyError as e:
            raise SchemaError(f"fingerprint is missing field {e}") from e


def fingerprint(p: MatrixPair, L: Optional[int] = None, tol: Optional[Tolerances] = None) -> InvariantFingerprint:
    """Eigenvalue maps plus traces of all necklace words of length <= L (default 4)."""
    L = L or EQUIVALENCE_CONFIG['word_length']
    if L < 1:
        raise ValueError(f"word length must be >= 1, got {L}")
    eig_x, eig_y = eigen_map(p, tol)
    words = {word: word_trace(p, word) for word in necklace_words(L)}
    return InvariantFingerprint(eig_x=eig_x, eig_y=eig_y, trace_words=words)


def multiset_distance(a, b) -> float:
    """Total |a_i - b_sigma(i)| of the optimal matching sigma."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size != b.size:
        return float('inf')
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum())


@dataclass(frozen=True)
class FingerprintComparison:
    match: bool
    eig_cost_x: float
    eig_cost_y: float
    max_word_error: float
    worst_word: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            'match': self.match,
            'eig_cost_x': self.eig_cost_x,
            'eig_cost_y': self.eig_cost_y,
            'max_word_error': self.max_word_error,
            'worst_word': self.worst_word,
        }


def compare_fingerprints(a: InvariantFingerprint, b: InvariantFingerprint,
                         tol: Optional[Tolerances] = None) -> FingerprintComparison:
    """
    Compares two fingerprints with relative tolerance equiv_tol.

    Eigenvalue costs are scaled by max(1, largest modulus); word errors by
    max(1, |tr_a|, |tr_b|). Words present in only one fingerprint are
    ignored.
    """
    tol = tol or Tolerances()
    scale_x = max(1.0, float(np.abs(np.concatenate([a.eig_x, b.eig_x])).max(initial=0.0)))
    scale_y = max(1.0, float(np.abs(np.concatenate([a.eig_y, b.eig_y])).max(initial=0.0)))
    cost_x = multiset_distance(a.eig_x, b.eig_x) / scale_x
    cost_y = multiset_distance(a.eig_y, b.eig_y) / scale_y

    worst_word, worst = None, 0.0
    for word in a.trace_words:
        if word not in b.trace_words:
            continue
        ta, tb = a.trace_words[word], b.trace_words[word]
        error = abs(ta - tb) / max(1.0, abs(ta), abs(tb))
        if error > worst:
            worst_word, worst = word, error

    match = cost_x <= tol.equiv_tol and cost_y <= tol.equiv_tol and worst <= tol.equiv_tol
    return FingerprintComparison(match=match, eig_cost_x=cost_x, eig_cost_y=cost_y,
                                 max_word_error=worst, worst_word=worst_word)
