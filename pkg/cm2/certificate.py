# cm2/certificate.py
"""
Certificate for the compatible pair on the n = 2 model.

Theta1 = d/dlambda generates psi, Theta2 = d/dx11 generates phi and
a = 2 lambda + eps. Every function checked is rational in the flow time
of degree at most one, so agreement at t = 0 and at the sample times
decides each identity; in the exact backend the check is a proof at the
grid points.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

import numpy as np

from matpair.models import Tolerances
from matpair.sampling import complex_gaussian
from .coords import (
    EXACT,
    FLOAT,
    CM2Coords,
    gaussian,
    is_zero,
    magnitude,
)
from .model import (
    PHI,
    PSI,
    cm2_constraint,
    cm2_flows,
    cm2_generators,
    z2_action_1,
    z2_action_2,
)

logger = logging.getLogger(__name__)

# Axis values of the exact grid
GRID_EPS = (0, 1, Fraction(-1, 2), (0, 1), (2, -1))
GRID_X21 = (1, -2, Fraction(1, 3), (1, 1), (0, Fraction(-1, 2)))
GRID_BASE = (0, 1, Fraction(-3, 2), (0, 2), (Fraction(1, 2), Fraction(1, 3)))

EXACT_TIMES = ((1, 0), (-2, 0), (Fraction(1, 2), Fraction(1, 3)))
FLOAT_TIMES = (1.0 + 0j, -2.0 + 0j, 0.5 + 0.25j)


def _as_gaussian(value):
    if isinstance(value, tuple):
        return gaussian(*value)
    return gaussian(value)


def _point(lam, eps, x11, x21, delta) -> CM2Coords:
    return CM2Coords(lam=lam, eps=eps, x11=x11, x21=x21, delta=delta)


def compatibility_grid(size: int = 5) -> List[CM2Coords]:
    """
    size^3 exact points on the variety, from axes (eps, x21, base).

    lambda = base and x11 = 1 - base. For eps != 0, delta = (1 - x21^2)/(eps x21);
    for eps = 0 the constraint forces x21 = +-1 and the x21-axis value becomes delta.
    """
    if not 1 <= size <= len(GRID_EPS):
        raise ValueError(f"grid size must be between 1 and {len(GRID_EPS)}, got {size}")
    one = gaussian(1)
    points = []
    for eps_raw in GRID_EPS[:size]:
        eps = _as_gaussian(eps_raw)
        for i, x21_raw in enumerate(GRID_X21[:size]):
            axis = _as_gaussian(x21_raw)
            for base_raw in GRID_BASE[:size]:
                base = _as_gaussian(base_raw)
                if is_zero(eps):
                    x21 = one if i % 2 == 0 else -one
                    delta = axis
                else:
                    x21 = axis
                    delta = (one - x21 * x21) / (eps * x21)
                points.append(_point(base, eps, one - base, x21, delta))
    return points


def float_grid(count: int, seed: int) -> List[CM2Coords]:
    """Seeded complex points on the variety (eps and x21 Gaussian, delta solved)."""
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < count:
        lam, eps, x11, x21 = complex_gaussian(rng, 4)
        if abs(eps) < 0.1 or abs(x21) < 0.1:
            continue
        delta = (1 - x21 * x21) / (eps * x21)
        points.append(_point(complex(lam), complex(eps), complex(x11), complex(x21), complex(delta)))
    return points


@dataclass
class ClauseResult:
    """
    Outcome of one certified identity over all grid points.

    Attributes:
        name: clause identifier
        backend: 'exact' or 'float'
        passed: all residuals zero (exact) or below tolerance (float)
        max_residual: largest residual, as a float
        checks: number of identities evaluated
        first_failure: index and coordinates of the first failing point
    """
    name: str
    backend: str
    passed: bool = True
    max_residual: float = 0.0
    checks: int = 0
    first_failure: Optional[dict] = None

    def record(self, residual, index: int, point: CM2Coords, atol: float) -> None:
        self.checks += 1
        size = magnitude(residual)
        self.max_residual = max(self.max_residual, size)
        ok = is_zero(residual) if self.backend == EXACT else size <= atol
        if not ok and self.passed:
            self.passed = False
            self.first_failure = {'index': index, 'point': point.to_dict(), 'residual': size}
            logger.info("clause %s failed at grid point %d (residual %.3e)", self.name, index, size)

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'backend': self.backend,
            'passed': self.passed,
            'max_residual': self.max_residual,
            'checks': self.checks,
            'first_failure': self.first_failure,
        }


@dataclass
class CompatibilityCertificate:
    backend: str
    points: int
    clauses: List[ClauseResult] = field(default_factory=list)
    descent: List[ClauseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses) and all(c.passed for c in self.descent)

    def clause(self, name: str) -> ClauseResult:
        for result in self.clauses + self.descent:
            if result.name == name:
                return result
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            'backend': self.backend,
            'points': self.points,
            'passed': self.passed,
            'clauses': [c.to_dict() for c in self.clauses],
            'descent': [c.to_dict() for c in self.descent],
        }


def _a(c: CM2Coords):
    return 2 * c.lam + c.eps


def _b(c: CM2Coords):
    return 2 * c.x11 + c.delta


# kernel elements listed for each flow
_PSI_KERNEL = {
    'd2': lambda c: cm2_generators(c).d2,
    'e2': lambda c: cm2_generators(c).e2,
    'w': lambda c: cm2_generators(c).w,
    'tr_x': _b,
}
_PHI_KERNEL = {
    'd2': lambda c: cm2_generators(c).d2,
    'e2': lambda c: cm2_generators(c).e2,
    'w': lambda c: cm2_generators(c).w,
    'tr_y': _a,
}
# multipliers in both kernels, for multiples of the ideal generator
_MULTIPLIERS = (
    lambda c: cm2_generators(c).d2,
    lambda c: cm2_generators(c).e2,
    lambda c: cm2_generators(c).w,
)


def _constancy(fn: Callable, c: CM2Coords, flow: str, t):
    return fn(cm2_flows(c, flow, t)) - fn(c)


def _coords_residual(c: CM2Coords, d: CM2Coords):
    """Largest componentwise difference, exact when both are exact."""
    diffs = [x - y for x, y in zip(c.components, d.components)]
    return max(diffs, key=magnitude)


def verify_compatible_pair(exact: bool = True,
                           size: int = 5,
                           seed: int = 0,
                           count: Optional[int] = None,
                           tol: Optional[Tolerances] = None) -> CompatibilityCertificate:
    """
    Certifies the compatible pair (Theta1, Theta2, a) on a grid.

    Clauses:
        theta2_kills_a: a is constant along phi
        a_degree_one: a(psi_s(c)) = a(c) + 2s, so Theta1 a = 2 and Theta1^2 a = 0
        kernel_memberships: d2, e2, w, 2 x11 + delta constant along psi and
            d2, e2, w, 2 lambda + eps constant along phi
        ideal_product: (2 x11 + delta)(2 lambda + eps) and its multiples by
            d2, e2, w split as (ker Theta1 element) * (ker Theta2 element),
            and the product is non-zero somewhere on the grid

    Descent checks: phi and psi commute with both Z2 actions and with each
    other, and every map keeps the constraint.

    Args:
        exact: Gaussian-rational size^3 grid; otherwise count seeded complex points
        size: exact grid axis length
        seed: float grid seed
        count: float grid size (default size^3)
    """
    tol = tol or Tolerances()
    backend = EXACT if exact else FLOAT
    if exact:
        points = compatibility_grid(size)
        times = [_as_gaussian(t) for t in EXACT_TIMES]
    else:
        points = float_grid(count or size ** 3, seed)
        times = list(FLOAT_TIMES)
    atol = tol.orbit_tol

    theta2_kills_a = ClauseResult('theta2_kills_a', backend)
    a_degree_one = ClauseResult('a_degree_one', backend)
    kernels = ClauseResult('kernel_memberships', backend)
    ideal = ClauseResult('ideal_product', backend)
    commute_z2 = ClauseResult('flows_commute_with_z2', backend)
    commute_flows = ClauseResult('flows_commute', backend)
    constraint = ClauseResult('constraint_preserved', backend)
    involutions = ClauseResult('z2_involutions', backend)

    product_nonzero = False
    for index, c in enumerate(points):
        for t in times:
            theta2_kills_a.record(_constancy(_a, c, PHI, t), index, c, atol)
            a_degree_one.record(_a(cm2_flows(c, PSI, t)) - _a(c) - 2 * t, index, c, atol)
            for fn in _PSI_KERNEL.values():
                kernels.record(_constancy(fn, c, PSI, t), index, c, atol)
            for fn in _PHI_KERNEL.values():
                kernels.record(_constancy(fn, c, PHI, t), index, c, atol)

            # the ideal generator factors into a psi-invariant times a phi-invariant
            ideal.record(_constancy(_b, c, PSI, t), index, c, atol)
            ideal.record(_constancy(_a, c, PHI, t), index, c, atol)
            for m in _MULTIPLIERS:
                ideal.record(_constancy(lambda d: m(d) * _b(d), c, PSI, t), index, c, atol)

            for flow in (PHI, PSI):
                moved = cm2_flows(c, flow, t)
                commute_z2.record(_coords_residual(z2_action_1(moved), cm2_flows(z2_action_1(c), flow, t)),
                                  index, c, atol)
                commute_z2.record(_coords_residual(z2_action_2(moved), cm2_flows(z2_action_2(c), flow, t)),
                                  index, c, atol)
                constraint.record(cm2_constraint(moved), index, c, atol)
            commute_flows.record(
                _coords_residual(cm2_flows(cm2_flows(c, PHI, t), PSI, t), cm2_flows(cm2_flows(c, PSI, t), PHI, t)),
                index, c, atol)

        for image in (z2_action_1(c), z2_action_2(c)):
            constraint.record(cm2_constraint(image), index, c, atol)
        involutions.record(_coords_residual(z2_action_1(z2_action_1(c)), c), index, c, atol)
        involutions.record(_coords_residual(z2_action_2(z2_action_2(c)), c), index, c, atol)
        if not is_zero(_b(c) * _a(c), atol):
            product_nonzero = True

    if not product_nonzero:
        ideal.passed = False
        ideal.first_failure = {'index': None, 'point': None, 'residual': 0.0}
        logger.info("ideal generator vanishes on the whole grid")

    certificate = CompatibilityCertificate(
        backend=backend,
        points=len(points),
        clauses=[theta2_kills_a, a_degree_one, kernels, ideal],
        descent=[commute_z2, commute_flows, constraint, involutions],
    )
    logger.info("compatible-pair certificate (%s, %d points): passed=%s", backend, len(points), certificate.passed)
    return certificate

