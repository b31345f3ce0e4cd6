# invariants/equivalence.py
"""
Equivalence test for pairs under simultaneous conjugation.

"distinct" is only returned when the fingerprints differ, which no
conjugator can cause. "equivalent" needs a witness: an explicit
conjugator, or for n = 2 matching canonical forms.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.linalg import null_space

from cm2.canonical import pair_to_cm2
from cm2.model import same_orbit
from config.settings import EQUIVALENCE_CONFIG
from matpair.codec import matrix_to_json
from matpair.errors import SingularConjugatorError, SizeMismatchError
from matpair.membership import check_conjugator, require_member
from matpair.models import MatrixPair, Tolerances
from .fingerprint import compare_fingerprints, fingerprint

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    EQUIVALENT = 'equivalent'
    DISTINCT = 'distinct'
    INCONCLUSIVE = 'inconclusive'


@dataclass(frozen=True)
class EquivalenceResult:
    """
    Attributes:
        verdict: equivalent, distinct or inconclusive
        conjugator: G with G p G^-1 = q when one was recovered
        reason: how the verdict was reached
    """
    verdict: Verdict
    conjugator: Optional[np.ndarray] = None
    reason: str = ''

    def __bool__(self) -> bool:
        return self.verdict is Verdict.EQUIVALENT

    def to_dict(self) -> dict:
        return {
            'verdict': self.verdict.value,
            'conjugator': None if self.conjugator is None else matrix_to_json(self.conjugator),
            'reason': self.reason,
        }


def intertwiner_system(p: MatrixPair, q: MatrixPair) -> np.ndarray:
    """
    The 2n^2 x n^2 matrix of G -> (G X - X' G, G Y - Y' G) on column-major vec(G).

    vec(G M) = (M^T kron I) vec(G) and vec(M' G) = (I kron M') vec(G).
    """
    identity = np.eye(p.n)
    return np.vstack([
        np.kron(p.X.T, identity) - np.kron(identity, q.X),
        np.kron(p.Y.T, identity) - np.kron(identity, q.Y),
    ])


def intertwining_residual(p: MatrixPair, q: MatrixPair, G: np.ndarray) -> float:
    """max(|G X - X' G|, |G Y - Y' G|) relative to |G| times the pair scale."""
    scale = max(1.0, np.linalg.norm(p.X), np.linalg.norm(p.Y), np.linalg.norm(q.X), np.linalg.norm(q.Y))
    residual = max(np.linalg.norm(G @ p.X - q.X @ G), np.linalg.norm(G @ p.Y - q.Y @ G))
    return float(residual / (np.linalg.norm(G) * scale))


def find_conjugator(p: MatrixPair, q: MatrixPair,
                    tol: Optional[Tolerances] = None,
                    rng: Optional[np.random.Generator] = None) -> Optional[np.ndarray]:
    """
    Looks for an invertible G with G X G^-1 = X' and G Y G^-1 = Y'.

    Solves the intertwiner system and tries up to kernel_attempts random
    combinations of its kernel basis. Returns None when none is invertible.
    """
    tol = tol or Tolerances()
    rng = rng if rng is not None else np.random.default_rng(0)
    if p.n != q.n:
        raise SizeMismatchError(f"size mismatch: n={p.n} vs n={q.n}")
    kernel = null_space(intertwiner_system(p, q), rcond=tol.rank_tol)
    if kernel.shape[1] == 0:
        logger.debug("intertwiner system has trivial kernel")
        return None
    logger.debug("intertwiner kernel of dimension %d", kernel.shape[1])
    for attempt in range(EQUIVALENCE_CONFIG['kernel_attempts']):
        if kernel.shape[1] == 1:
            coeffs = np.ones(1, dtype=complex)
        else:
            coeffs = rng.standard_normal(kernel.shape[1]) + 1j * rng.standard_normal(kernel.shape[1])
        G = (kernel @ coeffs).reshape(p.n, p.n, order='F')
        try:
            check_conjugator(G, p.n, tol)
        except SingularConjugatorError:
            logger.debug("kernel combination %d is singular", attempt)
            if kernel.shape[1] == 1:
                return None
            continue
        if intertwining_residual(p, q, G) <= tol.equiv_tol:
            return G
    return None


def _canonical_forms_match(p: MatrixPair, q: MatrixPair, tol: Tolerances) -> bool:
    return same_orbit(pair_to_cm2(p, tol), pair_to_cm2(q, tol), tol)


def equiv_test(p: MatrixPair, q: MatrixPair,
               tol: Optional[Tolerances] = None,
               word_length: Optional[int] = None,
               rng: Optional[np.random.Generator] = None) -> EquivalenceResult:
    """
    Decides whether p and q are conjugate.

    Raises:
        SizeMismatchError: p and q have different n
        NotAMemberError: either input fails the membership test
    """
    tol = tol or Tolerances()
    if p.n != q.n:
        raise SizeMismatchError(f"size mismatch: n={p.n} vs n={q.n}")
    require_member(p, tol)
    require_member(q, tol)

    comparison = compare_fingerprints(fingerprint(p, word_length, tol), fingerprint(q, word_length, tol), tol)
    if not comparison.match:
        reason = (f"fingerprints differ (eigX cost {comparison.eig_cost_x:.3e}, "
                  f"eigY cost {comparison.eig_cost_y:.3e}, word error {comparison.max_word_error:.3e})")
        return EquivalenceResult(Verdict.DISTINCT, reason=reason)

    if p.n == 1:
        # conjugation is trivial on 1x1 matrices
        return EquivalenceResult(Verdict.EQUIVALENT, conjugator=np.eye(1, dtype=complex),
                                 reason="n=1: fingerprints agree")

    G = find_conjugator(p, q, tol, rng)
    if G is not None:
        return EquivalenceResult(Verdict.EQUIVALENT, conjugator=G, reason="conjugator recovered")

    if p.n == 2 and _canonical_forms_match(p, q, tol):
        return EquivalenceResult(Verdict.EQUIVALENT, reason="n=2: canonical forms in one Z2xZ2 orbit")

    return EquivalenceResult(Verdict.INCONCLUSIVE, reason="fingerprints agree, no conjugator found")
