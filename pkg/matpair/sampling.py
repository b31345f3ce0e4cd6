# matpair/sampling.py
"""
Seeded generation of generic points.

Chart coordinates are drawn from the standard complex Gaussian; draws
with colliding lambdas are rejected. Only the distinct-eigenvalue chart
is covered.
"""

import logging
from typing import List, Optional

import numpy as np

from config.settings import SAMPLING_CONFIG
from .errors import SamplingExhaustedError
from .membership import conjugate, from_wilson_chart
from .models import MatrixPair, Tolerances, WilsonChartPoint

logger = logging.getLogger(__name__)

COVERAGE_NOTE = "distinct-eigenvalue chart only"


def complex_gaussian(rng: np.random.Generator, size) -> np.ndarray:
    """Standard complex Gaussian: E|z|^2 = 1."""
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2.0)


def sample_chart_points(n: int,
                        count: int,
                        seed: int,
                        tol: Optional[Tolerances] = None,
                        rng: Optional[np.random.Generator] = None) -> List[WilsonChartPoint]:
    """Draws count chart-valid (lambda, alpha) pairs; deterministic per seed."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    tol = tol or Tolerances()
    rng = rng if rng is not None else np.random.default_rng(seed)
    points: List[WilsonChartPoint] = []
    rejections = 0
    while len(points) < count:
        lambdas = complex_gaussian(rng, n)
        alphas = complex_gaussian(rng, n)
        point = WilsonChartPoint(lambdas=lambdas, alphas=alphas)
        if point.min_separation() <= tol.sep_tol:
            rejections += 1
            logger.debug("rejected draw with separation %.3e", point.min_separation())
            if rejections > SAMPLING_CONFIG['max_rejections']:
                raise SamplingExhaustedError(
                    f"sampling exhausted after {rejections} rejected draws (n={n})"
                )
            continue
        points.append(point)
    return points


def random_conjugator(n: int,
                      rng: np.random.Generator,
                      max_condition: Optional[float] = None) -> np.ndarray:
    """Complex Gaussian matrix with condition number at most max_condition."""
    max_condition = max_condition or SAMPLING_CONFIG['max_condition']
    for _ in range(SAMPLING_CONFIG['max_rejections']):
        G = complex_gaussian(rng, (n, n))
        if np.linalg.cond(G) <= max_condition:
            return G
    raise SamplingExhaustedError(
        f"sampling exhausted: no conjugator with cond <= {max_condition:.1e} (n={n})"
    )


def sample(n: int,
           count: int,
           seed: int,
           tol: Optional[Tolerances] = None,
           conjugated: bool = False) -> List[MatrixPair]:
    """
    Samples members of the Calogero-Moser space.

    Args:
        n: matrix size (>= 1)
        count: number of pairs
        seed: seed of numpy's default generator; equal seeds give bitwise
            equal output
        tol: tolerances (separation threshold)
        conjugated: post-conjugate every chart pair by a random G so the
            output leaves the chart's diagonal frame

    Returns:
        List of MatrixPair, all passing is_member.
    """
    tol = tol or Tolerances()
    rng = np.random.default_rng(seed)
    points = sample_chart_points(n, count, seed, tol, rng=rng)
    pairs = []
    for point in points:
        pair = from_wilson_chart(point, tol)
        if conjugated:
            pair = conjugate(pair, random_conjugator(n, rng), tol)
        pairs.append(pair)
    logger.info("sampled %d pairs (n=%d, seed=%d, conjugated=%s)", count, n, seed, conjugated)
    return pairs
