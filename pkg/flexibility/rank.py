# flexibility/rank.py
"""
Numeric rank with a relative singular-value cutoff and a reliability flag.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from scipy.linalg import svdvals

from matpair.models import Tolerances

logger = logging.getLogger(__name__)

# rows this far below the largest are roundoff, not directions
_ZERO_ROW = 1e-14


@dataclass(frozen=True)
class RankDecision:
    """
    Attributes:
        rank: number of singular values above rank_tol * sigma1
        gap: sigma_r / sigma_{r+1} at the decision (inf when nothing was cut)
        singular_values: normalized stack's singular values, decreasing
        reliable: gap >= min_gap
    """
    rank: int
    gap: float
    singular_values: List[float] = field(default_factory=list)
    reliable: bool = True


def normalized_rows(vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Stacks the vectors as rows scaled to unit norm; roundoff-level rows become zero."""
    rows = np.array([np.ravel(v) for v in vectors], dtype=complex)
    if rows.size == 0:
        return rows
    norms = np.linalg.norm(rows, axis=1)
    largest = norms.max()
    keep = norms > _ZERO_ROW * largest
    rows[~keep] = 0.0
    rows[keep] /= norms[keep][:, None]
    return rows


def numeric_rank(vectors: Sequence[np.ndarray], tol: Optional[Tolerances] = None) -> RankDecision:
    """Rank of the span of the vectors, deciding with the relative cutoff rank_tol."""
    tol = tol or Tolerances()
    rows = normalized_rows(vectors)
    if rows.size == 0 or not np.any(rows):
        return RankDecision(rank=0, gap=float('inf'), singular_values=[0.0] * len(rows), reliable=True)
    s = svdvals(rows)
    rank = int(np.sum(s > tol.rank_tol * s[0]))
    if rank < s.size:
        gap = float(s[rank - 1] / s[rank]) if s[rank] > 0 else float('inf')
    else:
        gap = float('inf')
    reliable = gap >= tol.min_gap
    if not reliable:
        logger.info("unreliable rank decision: rank %d with gap %.3e", rank, gap)
    return RankDecision(rank=rank, gap=gap, singular_values=[float(v) for v in s], reliable=reliable)
