# cm2/canonical.py
"""
Canonical coordinates of an n = 2 pair.

Y is first brought to [[mu1, 1], [0, mu2]] with the cyclic basis
{(Y - mu2) v, v}; this also covers a double eigenvalue, since Y of a member
is never scalar. The stabilizer of that Y consists of [[g, h], [0, g + eps h]];
with g = x21 the entry x12 vanishes iff h^2 - delta h - x12 x21 = 0.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from matpair.errors import NotAMemberError, SizeMismatchError
from matpair.membership import order_eigenvalues, require_member
from matpair.models import MatrixPair, Tolerances
from .coords import CM2Coords

logger = logging.getLogger(__name__)

_CANDIDATES = (
    np.array([1.0, 0.0], dtype=complex),
    np.array([0.0, 1.0], dtype=complex),
    np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0),
)


def triangularize_y(p: MatrixPair) -> Tuple[np.ndarray, np.ndarray]:
    """
    Conjugates p so that Y = [[mu1, 1], [0, mu2]] with (mu1, mu2) in (Re, Im) order.

    Returns (X', Y') with Y' set exactly to the triangular form.
    """
    mu = np.linalg.eigvals(p.Y)
    mu1, mu2 = mu[order_eigenvalues(mu)]
    shifted = p.Y - mu2 * np.eye(2)
    if not np.any(shifted):
        raise NotAMemberError("not a member: Y is scalar")
    # v fails only on the mu1 eigenline; take the best conditioned of three directions
    bases = [np.column_stack([shifted @ v, v]) for v in _CANDIDATES]
    B = min(bases, key=np.linalg.cond)
    X_t = np.linalg.solve(B, p.X @ B)
    Y_t = np.array([[mu1, 1.0], [0.0, mu2]], dtype=complex)
    return X_t, Y_t


def h_roots(X: np.ndarray) -> Tuple[complex, complex]:
    """
    Roots of h^2 - (x22 - x11) h - x12 x21 = 0, principal root first.

    2h = sqrt((x22 - x11)^2 + 4 x12 x21) + (x22 - x11) with numpy's principal
    square root; the second root is (x22 - x11) minus the first.
    """
    delta = X[1, 1] - X[0, 0]
    root = np.sqrt(complex(delta * delta + 4 * X[0, 1] * X[1, 0]))
    h1 = complex((root + delta) / 2)
    return h1, complex(delta - h1)


def eliminate_x12(X: np.ndarray, Y: np.ndarray, h: complex) -> CM2Coords:
    """Conjugates by S = [[x21, h], [0, x21 + eps h]] and reads off the coordinates."""
    g = X[1, 0]
    eps = Y[1, 1] - Y[0, 0]
    S = np.array([[g, h], [0, g + eps * h]], dtype=complex)
    X_c = np.linalg.solve(S.T, (S @ X).T).T
    logger.debug("residual x12 after elimination: %.3e", abs(X_c[0, 1]))
    return CM2Coords(
        lam=complex(Y[0, 0]),
        eps=complex(eps),
        x11=complex(X_c[0, 0]),
        x21=complex(X_c[1, 0]),
        delta=complex(X_c[1, 1] - X_c[0, 0]),
    )


def pair_to_cm2(p: MatrixPair, tol: Optional[Tolerances] = None) -> CM2Coords:
    """
    Canonical coordinates of a member with n = 2.

    Raises:
        SizeMismatchError: n != 2
        NotAMemberError: p fails the membership test
    """
    if p.n != 2:
        raise SizeMismatchError(f"size mismatch: the model needs n=2, got n={p.n}")
    require_member(p, tol)
    X_t, Y_t = triangularize_y(p)
    if X_t[1, 0] == 0:
        raise NotAMemberError("not a member: x21 = 0 after triangularizing Y")
    eps = Y_t[1, 1] - Y_t[0, 0]
    h1, h2 = h_roots(X_t)
    # S must be invertible; the two roots cannot both make x21 + eps h vanish
    g = X_t[1, 0]
    h = h1 if abs(g + eps * h1) >= abs(g + eps * h2) * 1e-8 else h2
    return eliminate_x12(X_t, Y_t, h)
