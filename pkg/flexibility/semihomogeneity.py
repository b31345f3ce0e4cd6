# flexibility/semihomogeneity.py
"""
The maps F_k, G_k fixing a base point and the one-vector generating check.

    F_k(X, Y) = (X + (tr Y - tr Y0) Y^k, Y)
    G_k(X, Y) = (X, Y + (tr X - tr X0) X^k)

Both are shears of Calogero-Moser flows, so they preserve membership and
fix (X0, Y0). Derivatives are taken in the Wilson chart (lambda, alpha)
around the base point.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from matpair.codec import vector_to_json
from matpair.membership import chart_coordinates, from_wilson_chart, require_member
from matpair.models import MatrixPair, Tolerances, WilsonChartPoint
from matpair.sampling import complex_gaussian, sample_chart_points
from automorphisms.flows import matrix_polynomial
from .rank import numeric_rank

logger = logging.getLogger(__name__)

PairMap = Callable[[MatrixPair], MatrixPair]

CONTOUR_POINTS = 8
_MAX_STEP = 1e-2


def _power(M: np.ndarray, k: int) -> np.ndarray:
    return matrix_polynomial([0] * k + [1], M)


class TangentialMaps:
    """
    F_k and G_k for a base point fixed for the lifetime of the object.

    Args:
        base: the point (X0, Y0) both maps fix
    """

    def __init__(self, base: MatrixPair):
        self.base = base
        self._tr_x0 = complex(np.trace(base.X))
        self._tr_y0 = complex(np.trace(base.Y))

    def F(self, p: MatrixPair, k: int) -> MatrixPair:
        shift = complex(np.trace(p.Y)) - self._tr_y0
        return MatrixPair(X=p.X + shift * _power(p.Y, k), Y=p.Y)

    def G(self, p: MatrixPair, k: int) -> MatrixPair:
        shift = complex(np.trace(p.X)) - self._tr_x0
        return MatrixPair(X=p.X, Y=p.Y + shift * _power(p.X, k))

    def F_map(self, k: int) -> PairMap:
        return lambda p: self.F(p, k)

    def G_map(self, k: int) -> PairMap:
        return lambda p: self.G(p, k)


def fk_gk_maps(p: MatrixPair, k: int, base: MatrixPair,
               tol: Optional[Tolerances] = None) -> Tuple[MatrixPair, MatrixPair]:
    """
    (F_k(p), G_k(p)) for the given base point.

    Raises:
        NotAMemberError: p or base fails the membership test
    """
    require_member(p, tol)
    require_member(base, tol)
    maps = TangentialMaps(base)
    return maps.F(p, k), maps.G(p, k)


def holomorphic_derivative(f: Callable[[np.ndarray], np.ndarray],
                           z: np.ndarray,
                           direction: np.ndarray,
                           h: float,
                           points: int = 4) -> np.ndarray:
    """
    Directional derivative of a holomorphic f by a contour average.

    (1/(m h)) sum_k omega^-k f(z + h omega^k d) with omega = exp(2 pi i/m);
    the error is O(h^m) with no subtractive cancellation between
    neighbouring samples.
    """
    z = np.asarray(z, dtype=complex)
    direction = np.asarray(direction, dtype=complex)
    omegas = np.exp(2j * np.pi * np.arange(points) / points)
    total = sum(np.conj(w) * np.asarray(f(z + h * w * direction), dtype=complex) for w in omegas)
    return total / (points * h)


def contour_step(base: WilsonChartPoint, direction: np.ndarray, tol: Tolerances) -> float:
    """
    Contour radius: 2% of the eigenvalue separation, between fd_step and 1e-2.

    The chart map is singular where two lambdas collide, so the radius has
    to stay well inside the separation for the O(h^m) error to be small.
    """
    h = min(_MAX_STEP, 0.02 * base.min_separation())
    h = max(h, tol.fd_step)
    return h / max(1.0, float(np.abs(direction).max()))


def directional_derivative(pair_map: PairMap, base: WilsonChartPoint, direction: np.ndarray,
                           tol: Tolerances) -> np.ndarray:
    """d(pair_map) along a chart direction at the base point."""
    direction = np.asarray(direction, dtype=complex)
    return holomorphic_derivative(chart_map(pair_map, base, tol), base.vector, direction,
                                  contour_step(base, direction, tol), points=CONTOUR_POINTS)


def chart_map(pair_map: PairMap, base: WilsonChartPoint,
              tol: Optional[Tolerances] = None) -> Callable[[np.ndarray], np.ndarray]:
    """pair_map written in Wilson coordinates, eigenvalues matched to the base ordering."""
    reference = base.lambdas

    def in_chart(z: np.ndarray) -> np.ndarray:
        point = WilsonChartPoint.from_vector(z)
        image = pair_map(from_wilson_chart(point, tol))
        return chart_coordinates(image, reference=reference, tol=tol).vector

    return in_chart


def chart_jacobian(pair_map: PairMap, base: WilsonChartPoint,
                   tol: Optional[Tolerances] = None) -> np.ndarray:
    """2n x 2n Jacobian in (lambda, alpha) coordinates; column j is the derivative along e_j."""
    tol = tol or Tolerances()
    size = base.vector.size
    columns = [directional_derivative(pair_map, base, np.eye(size)[j], tol) for j in range(size)]
    return np.column_stack(columns)


def generator_block(base: WilsonChartPoint, k: int, tol: Optional[Tolerances] = None) -> np.ndarray:
    """
    The (d alpha / d lambda) block of dG_k at the base point.

    At a Wilson point G_k adds (sum lambda - sum lambda0) lambda_i^k to alpha_i,
    so the block has entries lambda_i^k and diagonal diag(lambda^k).
    """
    tol = tol or Tolerances()
    maps = TangentialMaps(from_wilson_chart(base, tol))
    J = chart_jacobian(maps.G_map(k), base, tol)
    n = base.n
    return J[n:, :n]


@dataclass(frozen=True)
class SemiHomogeneityReport:
    """
    Attributes:
        n: matrix size
        base: Wilson base point
        w: chart tangent vector (lambda part, then alpha part)
        rank: numeric rank of {w, dF_k(w), dG_k(w) : k = 0..n-1}
        singular_values: of the normalized stack
        gap: singular-value gap at the rank decision
        passed: rank == 2n
        reliable: gap >= min_gap
        negative_control: w was built with a vanishing lambda part
    """
    n: int
    base: WilsonChartPoint
    w: np.ndarray
    rank: int
    singular_values: List[float] = field(default_factory=list)
    gap: float = float('inf')
    passed: bool = False
    reliable: bool = True
    negative_control: bool = False

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'base': self.base.to_dict(),
            'w': vector_to_json(self.w),
            'rank': self.rank,
            'singular_values': list(self.singular_values),
            'gap': self.gap,
            'passed': self.passed,
            'reliable': self.reliable,
            'negative_control': self.negative_control,
        }


def random_tangent(n: int, rng: np.random.Generator, negative_control: bool = False) -> np.ndarray:
    """
    Chart vector with all components away from zero.

    The negative control zeroes the lambda part: dG_k(w) = w then, and
    the span cannot reach 2n for n >= 2.
    """
    while True:
        w = complex_gaussian(rng, 2 * n)
        if np.all(np.abs(w) > 0.1) and abs(w[:n].sum()) > 0.1 and abs(w[n:].sum()) > 0.1:
            break
    if negative_control:
        w[:n] = 0.0
    return w


def semi_homogeneity_check(n: int,
                           seed: int,
                           tol: Optional[Tolerances] = None,
                           w: Optional[np.ndarray] = None,
                           negative_control: bool = False) -> SemiHomogeneityReport:
    """
    Checks that {w, dF_k(w), dG_k(w) : k = 0..n-1} spans the 2n-dimensional chart.

    Raises:
        ChartError: base point not in chart
    """
    tol = tol or Tolerances()
    rng = np.random.default_rng(seed)
    base = sample_chart_points(n, 1, seed, tol, rng=rng)[0]
    if w is None:
        w = random_tangent(n, rng, negative_control)
    w = np.asarray(w, dtype=complex)
    if w.shape != (2 * n,):
        raise ValueError(f"w must have 2n={2 * n} components, got shape {w.shape}")

    maps = TangentialMaps(from_wilson_chart(base, tol))
    vectors = [w]
    for k in range(n):
        for pair_map in (maps.F_map(k), maps.G_map(k)):
            vectors.append(directional_derivative(pair_map, base, w, tol))
    decision = numeric_rank(vectors, tol)
    logger.info("semi-homogeneity n=%d seed=%d: rank %d (gap %.3e)", n, seed, decision.rank, decision.gap)
    return SemiHomogeneityReport(
        n=n,
        base=base,
        w=w,
        rank=decision.rank,
        singular_values=decision.singular_values,
        gap=decision.gap,
        passed=decision.rank == 2 * n,
        reliable=decision.reliable,
        negative_control=negative_control,
    )
