# cm2/model.py
"""
The n = 2 model: constraint, reconstruction of the matrix pair, the two
Z2 identifications, the ring generators and the two C+ actions.

Every pair of C_2 is conjugate to
    X = [[x11, 0], [x21, x11 + delta]],  Y = [[lambda, 1], [0, lambda + eps]]
and the defect [X, Y] + id = [[1 - x21, -delta], [-eps x21, 1 + x21]] has
rank one iff x21^2 + eps delta x21 - 1 = 0.
"""

import logging
from typing import Dict, List, Optional

import numpy as np

from matpair.errors import OffVarietyError, SchemaError, VanishingCoordinateError
from matpair.models import MatrixPair, Tolerances
from .coords import CM2Coords, CM2Generators, float_value, is_zero, magnitude, one_like, to_float

logger = logging.getLogger(__name__)

PHI = 'phi'
PSI = 'psi'


def cm2_constraint(c: CM2Coords):
    """x21^2 + eps delta x21 - 1; exact for Gaussian-rational input."""
    return c.x21 * c.x21 + c.eps * c.delta * c.x21 - one_like(c.x21)


def _scale(c: CM2Coords) -> float:
    return max(1.0, *(magnitude(v) for v in c.components))


def on_variety(c: CM2Coords, tol: Optional[Tolerances] = None) -> bool:
    """Exact zero test in the exact backend; relative orbit_tol otherwise."""
    tol = tol or Tolerances()
    residual = cm2_constraint(c)
    if c.exact:
        return is_zero(residual)
    return magnitude(residual) <= tol.orbit_tol * _scale(c) ** 3


def require_on_variety(c: CM2Coords, tol: Optional[Tolerances] = None) -> None:
    if not on_variety(c, tol):
        raise OffVarietyError(
            f"off-variety input: constraint residual {magnitude(cm2_constraint(c)):.3e}"
        )


def cm2_to_pair(c: CM2Coords, tol: Optional[Tolerances] = None) -> MatrixPair:
    """The representative pair of c (exact coordinates are rounded to complex)."""
    require_on_variety(c, tol)
    f = to_float(c)
    X = np.array([[f.x11, 0], [f.x21, f.x11 + f.delta]], dtype=complex)
    Y = np.array([[f.lam, 1], [0, f.lam + f.eps]], dtype=complex)
    return MatrixPair(X=X, Y=Y)


def z2_action_1(c: CM2Coords) -> CM2Coords:
    """(lambda, eps, x11 + delta, x21 + eps delta, -delta): the other root of the x12 elimination."""
    return CM2Coords(c.lam, c.eps, c.x11 + c.delta, c.x21 + c.eps * c.delta, -c.delta)


def z2_action_2(c: CM2Coords) -> CM2Coords:
    """(lambda + eps, -eps, x11, x21 + eps delta, delta): the other ordering of Y's eigenvalues."""
    return CM2Coords(c.lam + c.eps, -c.eps, c.x11, c.x21 + c.eps * c.delta, c.delta)


def coords_close(c: CM2Coords, d: CM2Coords, tol: Optional[Tolerances] = None) -> bool:
    """Exact equality when both are exact, otherwise relative orbit_tol."""
    if c.exact and d.exact:
        return all(is_zero(a - b) for a, b in zip(c.components, d.components))
    tol = tol or Tolerances()
    scale = max(_scale(c), _scale(d))
    return all(abs(float_value(a) - float_value(b)) <= tol.orbit_tol * scale
               for a, b in zip(c.components, d.components))


def cm2_orbit(c: CM2Coords, tol: Optional[Tolerances] = None) -> List[CM2Coords]:
    """
    Distinct elements of the Z2 x Z2 orbit of c, starting with c.

    The actions commute, so the orbit is {c, z1 c, z2 c, z1 z2 c}; it has
    1, 2 or 4 elements.
    """
    candidates = [c, z2_action_1(c), z2_action_2(c), z2_action_1(z2_action_2(c))]
    orbit: List[CM2Coords] = []
    for candidate in candidates:
        if not any(coords_close(candidate, seen, tol) for seen in orbit):
            orbit.append(candidate)
    return orbit


def same_orbit(c: CM2Coords, d: CM2Coords, tol: Optional[Tolerances] = None) -> bool:
    return any(coords_close(e, d, tol) for e in cm2_orbit(c, tol))


def cm2_generators(c: CM2Coords) -> CM2Generators:
    """delta^2, eps^2, 2 lambda + eps, 2 x11 + delta and x21 + 1/x21."""
    if is_zero(c.x21):
        raise VanishingCoordinateError("x21 vanishes: x21 + 1/x21 is undefined")
    return CM2Generators(
        d2=c.delta * c.delta,
        e2=c.eps * c.eps,
        tr_y=2 * c.lam + c.eps,
        tr_x=2 * c.x11 + c.delta,
        w=c.x21 + one_like(c.x21) / c.x21,
    )


def generators_from_pair(p: MatrixPair) -> CM2Generators:
    """
    The same five functions from traces and determinants of any n = 2 pair.

    w = 2 tr(XY) - tr X tr Y equals 2 x21 + eps delta = x21 + 1/x21 on the model.
    """
    tr_x = complex(np.trace(p.X))
    tr_y = complex(np.trace(p.Y))
    return CM2Generators(
        d2=tr_x ** 2 - 4 * complex(np.linalg.det(p.X)),
        e2=tr_y ** 2 - 4 * complex(np.linalg.det(p.Y)),
        tr_y=tr_y,
        tr_x=tr_x,
        w=2 * complex(np.trace(p.X @ p.Y)) - tr_x * tr_y,
    )


def orbit_generator_spread(c: CM2Coords, tol: Optional[Tolerances] = None) -> Dict[str, float]:
    """Largest |g(e) - g(c)| over the orbit, per generator, reported as measured."""
    base = cm2_generators(c).values()
    spread = dict.fromkeys(CM2Generators.NAMES, 0.0)
    for element in cm2_orbit(c, tol):
        for name, g0, g in zip(CM2Generators.NAMES, base, cm2_generators(element).values()):
            spread[name] = max(spread[name], magnitude(g - g0))
    logger.debug("orbit generator spread: %s", spread)
    return spread


def cm2_flows(c: CM2Coords, flow: str, t) -> CM2Coords:
    """
    phi_t shifts x11 (X + t id), psi_t shifts lambda (Y + t id).

    Neither touches eps, delta or x21, so the constraint is unchanged.
    """
    if flow == PHI:
        return c.replace(x11=c.x11 + t)
    if flow == PSI:
        return c.replace(lam=c.lam + t)
    raise SchemaError(f"unknown flow {flow!r}; expected 'phi' or 'psi'")


def cm2_transpose_swap(c: CM2Coords) -> CM2Coords:
    """
    (X, Y) -> (Y^T, X^T) in coordinates: (x11, delta, lambda, x21, eps).

    Y^T is lower triangular with x21 = 1 and X^T upper triangular with
    superdiagonal x21; conjugating by diag(1, x21) restores the normal form.
    """
    return CM2Coords(c.x11, c.delta, c.lam, c.x21, c.eps)
