# matpair/membership.py
"""
Membership test, the GL_n conjugation action and the Wilson chart.
"""

import logging
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import svdvals
from scipy.optimize import linear_sum_assignment

from .errors import ChartError, EigenvalueCollisionError, NotAMemberError, SingularConjugatorError
from .models import MatrixPair, MembershipReport, Tolerances, WilsonChartPoint

logger = logging.getLogger(__name__)

_TINY = np.finfo(float).tiny


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B - B @ A


def commutator_defect(p: MatrixPair) -> np.ndarray:
    """Returns [X,Y] + id."""
    return commutator(p.X, p.Y) + np.eye(p.n)


def defect_singular_values(p: MatrixPair) -> np.ndarray:
    """Singular values of the defect in decreasing order."""
    return svdvals(commutator_defect(p))


def defect_ratio(p: MatrixPair) -> float:
    """sigma2/sigma1 of the defect (0 for n = 1)."""
    s = defect_singular_values(p)
    if s.size < 2:
        return 0.0
    return float(s[1] / s[0]) if s[0] > _TINY else float('inf')


def is_member(p: MatrixPair, tol: Optional[Tolerances] = None) -> MembershipReport:
    """
    Tests rank([X,Y] + id) = 1 via singular values of the defect.

    True iff sigma1 > 0 and sigma2/sigma1 < rank_tol. For n = 1 the defect
    is the 1x1 matrix [1], so every pair is a member.
    """
    tol = tol or Tolerances()
    s = defect_singular_values(p)
    sigma1 = float(s[0])
    sigma2 = float(s[1]) if s.size > 1 else 0.0
    if sigma1 <= _TINY:
        return MembershipReport(False, sigma1, sigma2, diagnostic="zero defect matrix")
    member = sigma2 / sigma1 < tol.rank_tol
    return MembershipReport(bool(member), sigma1, sigma2)


def require_member(p: MatrixPair, tol: Optional[Tolerances] = None) -> MembershipReport:
    """Raises NotAMemberError unless p passes is_member."""
    report = is_member(p, tol)
    if not report:
        reason = report.diagnostic or f"sigma2/sigma1 = {report.ratio:.3e}"
        raise NotAMemberError(f"not a member: rank([X,Y] + id) != 1 ({reason})")
    return report


def check_conjugator(G: np.ndarray, n: int, tol: Optional[Tolerances] = None) -> np.ndarray:
    """Validates shape and invertibility of G; returns it as a complex array."""
    tol = tol or Tolerances()
    G = np.asarray(G, dtype=complex)
    if G.shape != (n, n):
        raise SingularConjugatorError(f"singular conjugator: expected shape {(n, n)}, got {G.shape}")
    if not np.all(np.isfinite(G)):
        raise SingularConjugatorError("singular conjugator: non-finite entries")
    norm = np.linalg.norm(G, 2)
    if norm == 0 or abs(np.linalg.det(G)) / norm ** n < tol.invertibility_floor:
        raise SingularConjugatorError("singular conjugator: |det G| below the invertibility floor")
    return G


def conjugate(p: MatrixPair, G: np.ndarray, tol: Optional[Tolerances] = None) -> MatrixPair:
    """Returns G.(X, Y) = (G X G^-1, G Y G^-1)."""
    G = check_conjugator(G, p.n, tol)

    def act(M: np.ndarray) -> np.ndarray:
        # (G M) G^-1 without forming the inverse
        return np.linalg.solve(G.T, (G @ M).T).T

    return MatrixPair(X=act(p.X), Y=act(p.Y))


def wilson_matrices(lambdas: np.ndarray, alphas: np.ndarray):
    """X = diag(lambda), Y with diagonal alpha and entries 1/(lambda_i - lambda_j)."""
    diff = lambdas[:, None] - lambdas[None, :]
    np.fill_diagonal(diff, 1.0)
    Y = 1.0 / diff
    np.fill_diagonal(Y, alphas)
    return np.diag(lambdas), Y


def from_wilson_chart(w: WilsonChartPoint, tol: Optional[Tolerances] = None) -> MatrixPair:
    """
    Builds the chart representative of w.

    The defect of the result is the all-ones matrix: off the diagonal
    (lambda_i - lambda_j) * (lambda_i - lambda_j)^-1 = 1.
    """
    tol = tol or Tolerances()
    if w.min_separation() <= tol.sep_tol:
        raise EigenvalueCollisionError(
            f"eigenvalue collision: min separation {w.min_separation():.3e} <= {tol.sep_tol:.1e}"
        )
    X, Y = wilson_matrices(w.lambdas, w.alphas)
    return MatrixPair(X=X, Y=Y)


def order_eigenvalues(values: np.ndarray, reference: Optional[Sequence[complex]] = None) -> np.ndarray:
    """
    Index order for eigenvalues.

    Lexicographic on (Re, Im) by default; with a reference list, the
    minimum-cost matching of |value - reference| puts each value in the
    slot of its reference.
    """
    values = np.asarray(values)
    if reference is None:
        return np.lexsort((values.imag, values.real))
    reference = np.asarray(reference)
    cost = np.abs(values[:, None] - reference[None, :])
    rows, cols = linear_sum_assignment(cost)
    order = np.empty(values.size, dtype=int)
    order[cols] = rows
    return order


def chart_coordinates(p: MatrixPair,
                      reference: Optional[Sequence[complex]] = None,
                      tol: Optional[Tolerances] = None) -> WilsonChartPoint:
    """
    Projects a pair with distinct X-eigenvalues to (lambda, alpha).

    With X = V diag(lambda) V^-1, alpha = diag(V^-1 Y V); rescaling the
    eigenvectors conjugates by a diagonal matrix, which leaves this
    diagonal unchanged.
    """
    tol = tol or Tolerances()
    values, V = np.linalg.eig(p.X)
    order = order_eigenvalues(values, reference)
    values, V = values[order], V[:, order]
    if p.n > 1:
        diffs = np.abs(values[:, None] - values[None, :])
        diffs[np.diag_indices(p.n)] = np.inf
        scale = max(1.0, float(np.abs(values).max()))
        if diffs.min() / scale <= tol.sep_tol:
            raise ChartError("base point not in chart: X has (nearly) repeated eigenvalues")
    alphas = np.diag(np.linalg.solve(V, p.Y @ V))
    logger.debug("chart coordinates for n=%d computed", p.n)
    return WilsonChartPoint(lambdas=values, alphas=alphas)
