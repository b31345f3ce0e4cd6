# flexibility/tangents.py
"""
Tangent-span check: Calogero-Moser flow fields against the conjugation orbit.

A tangent vector (A, B) at (X, Y) is flattened as concat(A.ravel(), B.ravel()),
row-major. The quotient span is rank(flows + orbit) - rank(orbit); the
fields span the tangent space of the quotient at p iff it equals 2n.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from config.settings import THREADS
from matpair.membership import commutator, defect_ratio, require_member
from matpair.models import MatrixPair, Tolerances
from matpair.sampling import sample
from .rank import numeric_rank

logger = logging.getLogger(__name__)


def flatten_tangent(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.concatenate([np.ravel(A), np.ravel(B)])


def split_tangent(vector: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray]:
    vector = np.asarray(vector, dtype=complex)
    return vector[:n * n].reshape(n, n), vector[n * n:].reshape(n, n)


def flow_tangents(p: MatrixPair, tol: Optional[Tolerances] = None) -> List[np.ndarray]:
    """(0, X^k) for k = 1..n, then (Y^k, 0) for k = 1..n."""
    require_member(p, tol)
    zero = np.zeros((p.n, p.n), dtype=complex)
    y_fields, x_fields = [], []
    X_k = np.eye(p.n, dtype=complex)
    Y_k = np.eye(p.n, dtype=complex)
    for _ in range(p.n):
        X_k = X_k @ p.X
        Y_k = Y_k @ p.Y
        y_fields.append(flatten_tangent(zero, X_k))
        x_fields.append(flatten_tangent(Y_k, zero))
    return y_fields + x_fields


def orbit_tangents(p: MatrixPair, tol: Optional[Tolerances] = None) -> List[np.ndarray]:
    """([E_ij, X], [E_ij, Y]) for (i, j) in row-major order."""
    require_member(p, tol)
    vectors = []
    for i in range(p.n):
        for j in range(p.n):
            E = np.zeros((p.n, p.n), dtype=complex)
            E[i, j] = 1.0
            vectors.append(flatten_tangent(commutator(E, p.X), commutator(E, p.Y)))
    return vectors


def defect_drift(p: MatrixPair, direction: np.ndarray, h: Optional[float] = None,
                 tol: Optional[Tolerances] = None) -> float:
    """
    Change of sigma2/sigma1 of the defect at p + h * direction.

    O(h^2) for directions tangent to the rank-one stratum, O(h) otherwise.
    """
    tol = tol or Tolerances()
    h = h if h is not None else tol.fd_step
    direction = np.asarray(direction, dtype=complex)
    direction = direction / np.linalg.norm(direction)
    A, B = split_tangent(direction, p.n)
    moved = MatrixPair(X=p.X + h * A, Y=p.Y + h * B)
    return abs(defect_ratio(moved) - defect_ratio(p))


@dataclass(frozen=True)
class SpanReport:
    """
    Tangent-span result at one point.

    Attributes:
        n: matrix size
        point: the pair checked
        orbit_rank: rank of the conjugation-orbit stack (n^2 - 1 at members,
            since scalars act trivially)
        combined_rank: rank of flows and orbit together
        quotient_span: combined_rank - orbit_rank
        passed: quotient_span == 2n
        singular_value_gap: the smaller of the two rank decisions' gaps
        singular_values: singular values of the combined stack
        reliable: both gaps reach min_gap
    """
    n: int
    point: MatrixPair
    orbit_rank: int
    combined_rank: int
    quotient_span: int
    passed: bool
    singular_value_gap: float
    singular_values: List[float] = field(default_factory=list)
    reliable: bool = True

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'point': self.point.to_dict(),
            'orbit_rank': self.orbit_rank,
            'combined_rank': self.combined_rank,
            'quotient_span': self.quotient_span,
            'passed': self.passed,
            'singular_value_gap': self.singular_value_gap,
            'singular_values': list(self.singular_values),
            'reliable': self.reliable,
        }


@dataclass(frozen=True)
class FlexibilitySummary:
    n: int
    samples: int
    passes: int
    flagged_unreliable: int

    @property
    def all_passed(self) -> bool:
        return self.passes == self.samples

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'samples': self.samples,
            'passes': self.passes,
            'flagged_unreliable': self.flagged_unreliable,
        }


def span_report(p: MatrixPair, tol: Optional[Tolerances] = None) -> SpanReport:
    tol = tol or Tolerances()
    orbit = orbit_tangents(p, tol)
    flows = flow_tangents(p, tol)
    orbit_decision = numeric_rank(orbit, tol)
    combined_decision = numeric_rank(orbit + flows, tol)
    quotient_span = combined_decision.rank - orbit_decision.rank
    gap = min(orbit_decision.gap, combined_decision.gap)
    return SpanReport(
        n=p.n,
        point=p,
        orbit_rank=orbit_decision.rank,
        combined_rank=combined_decision.rank,
        quotient_span=quotient_span,
        passed=quotient_span == 2 * p.n,
        singular_value_gap=gap,
        singular_values=combined_decision.singular_values,
        reliable=orbit_decision.reliable and combined_decision.reliable,
    )


def summarize(n: int, reports: List[SpanReport]) -> FlexibilitySummary:
    return FlexibilitySummary(
        n=n,
        samples=len(reports),
        passes=sum(r.passed for r in reports),
        flagged_unreliable=sum(not r.reliable for r in reports),
    )


def flexibility_check(n: int,
                      samples: int,
                      seed: int,
                      tol: Optional[Tolerances] = None,
                      threads: Optional[int] = None) -> Tuple[List[SpanReport], FlexibilitySummary]:
    """
    Runs span_report on seeded samples.

    Points are checked in a pool of `threads` workers (CM_SPACES_THREADS by
    default); reports come back in sample order.
    """
    tol = tol or Tolerances()
    pairs = sample(n, samples, seed, tol)
    workers = max(1, threads or THREADS)
    if workers == 1:
        reports = [span_report(p, tol) for p in pairs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda p: span_report(p, tol), pairs))
    summary = summarize(n, reports)
    logger.info("flexibility n=%d: %d/%d passed, %d unreliable",
                n, summary.passes, summary.samples, summary.flagged_unreliable)
    return reports, summary


def summary_frame(reports: List[SpanReport]) -> pd.DataFrame:
    """One row per report, for the console table and `report`."""
    rows = []
    for index, r in enumerate(reports):
        rows.append({
            'sample': index,
            'n': r.n,
            'orbit_rank': r.orbit_rank,
            'combined_rank': r.combined_rank,
            'quotient_span': r.quotient_span,
            'passed': r.passed,
            'gap': r.singular_value_gap,
            'reliable': r.reliable,
        })
    return pd.DataFrame(rows, columns=['sample', 'n', 'orbit_rank', 'combined_rank',
                                       'quotient_span', 'passed', 'gap', 'reliable'])
