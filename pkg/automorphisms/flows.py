# automorphisms/flows.py
"""
Calogero-Moser flows, the SL2 action and the transpose swap.

The public functions check membership of their input first; the
underscored variants are the bare maps, used where a flow is sampled
many times along one orbit.
"""

from typing import Optional, Sequence

import numpy as np

from matpair.errors import NonUnimodularError
from matpair.membership import require_member
from matpair.models import MatrixPair, Tolerances


def matrix_polynomial(coeffs: Sequence[complex], M: np.ndarray) -> np.ndarray:
    """Evaluates sum_k c_k M^k (ascending coefficients) by Horner's rule."""
    n = M.shape[0]
    result = np.zeros((n, n), dtype=complex)
    identity = np.eye(n, dtype=complex)
    for c in reversed(list(coeffs)):
        result = result @ M + c * identity
    return result


def _flow_y(p: MatrixPair, poly: Sequence[complex], t: complex) -> MatrixPair:
    return MatrixPair(X=p.X, Y=p.Y + t * matrix_polynomial(poly, p.X))


def _flow_x(p: MatrixPair, poly: Sequence[complex], t: complex) -> MatrixPair:
    return MatrixPair(X=p.X + t * matrix_polynomial(poly, p.Y), Y=p.Y)


def apply_cm_flow_Y(p: MatrixPair, poly: Sequence[complex], t: complex,
                    tol: Optional[Tolerances] = None) -> MatrixPair:
    """(X, Y) -> (X, Y + t p(X)); leaves [X,Y] and the X-eigenvalues unchanged."""
    require_member(p, tol)
    return _flow_y(p, poly, t)


def apply_cm_flow_X(p: MatrixPair, poly: Sequence[complex], t: complex,
                    tol: Optional[Tolerances] = None) -> MatrixPair:
    """(X, Y) -> (X + t q(Y), Y); leaves [X,Y] and the Y-eigenvalues unchanged."""
    require_member(p, tol)
    return _flow_x(p, poly, t)


def check_unimodular(A, tol: Optional[Tolerances] = None) -> np.ndarray:
    tol = tol or Tolerances()
    A = np.asarray(A, dtype=complex)
    if A.shape != (2, 2):
        raise NonUnimodularError(f"non-unimodular matrix: expected 2x2, got shape {A.shape}")
    det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    if abs(det - 1) >= tol.rank_tol:
        raise NonUnimodularError(f"non-unimodular matrix: det A = {det:.6g}")
    return A


def sl2_inverse(A: np.ndarray) -> np.ndarray:
    """Inverse of a unit-determinant 2x2 matrix: [[d, -b], [-c, a]]."""
    return np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]], dtype=complex)


def apply_sl2(p: MatrixPair, A, tol: Optional[Tolerances] = None) -> MatrixPair:
    """
    (X, Y) -> (a11 X + a12 Y, a21 X + a22 Y).

    [a11 X + a12 Y, a21 X + a22 Y] = det(A) [X, Y], so unit determinant
    keeps the commutator.
    """
    A = check_unimodular(A, tol)
    require_member(p, tol)
    return MatrixPair(X=A[0, 0] * p.X + A[0, 1] * p.Y,
                      Y=A[1, 0] * p.X + A[1, 1] * p.Y)


def apply_transpose_swap(p: MatrixPair, tol: Optional[Tolerances] = None) -> MatrixPair:
    """(X, Y) -> (Y^T, X^T); the defect is transposed, its rank kept."""
    require_member(p, tol)
    return MatrixPair(X=p.Y.T, Y=p.X.T)
