# invariants/__init__.py
"""
Eigenvalue maps, trace-word fingerprints and the equivalence test.
"""

from .fingerprint import (
    InvariantFingerprint,
    FingerprintComparison,
    eigen_map,
    fingerprint,
    necklace_words,
    word_trace,
    compare_fingerprints,
    multiset_distance,
)
from .equivalence import Verdict, EquivalenceResult, equiv_test, find_conjugator, intertwiner_system

__all__ = [
    'InvariantFingerprint',
    'FingerprintComparison',
    'eigen_map',
    'fingerprint',
    'necklace_words',
    'word_trace',
    'compare_fingerprints',
    'multiset_distance',
    'Verdict',
    'EquivalenceResult',
    'equiv_test',
    'find_conjugator',
    'intertwiner_system',
]
