# automorphisms/shears.py
"""
Shears and overshears of Calogero-Moser flows.

For a complete field Theta with flow phi_t and a function f:
- Theta(f) = 0: the shear f.Theta has flow phi_{t f(x)}(x)
- Theta^2(f) = 0, Theta(f) != 0: the overshear has flow
  phi_{eps(t Theta_x f) t f(x)}(x) with eps(z) = (e^z - 1)/z
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from matpair.errors import NotDegreeOneError, NotInvariantError
from matpair.membership import require_member
from matpair.models import MatrixPair, Tolerances
from .flows import _flow_x, _flow_y
from .functions import FunctionSpec
from .steps import CM_FLOW_Y, AutoStep

logger = logging.getLogger(__name__)

# Sample times along the base flow; f is fitted by a polynomial of degree <= 2
PROFILE_TIMES = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])

INVARIANT = 'invariant'
DEGREE_ONE = 'degree_one'
HIGHER = 'higher'

_SERIES_RADIUS = 1e-3
_SERIES_TERMS = 8


def eval_epsilon(zeta: complex) -> complex:
    """
    (e^z - 1)/z, continued by 1 at z = 0.

    The power series sum_k z^(k-1)/k! is used for |z| < 1e-3, where the
    closed form loses digits to cancellation.
    """
    zeta = complex(zeta)
    if abs(zeta) < _SERIES_RADIUS:
        total = 0j
        term = 1 + 0j       # z^(k-1)/k! at k = 1
        for k in range(1, _SERIES_TERMS + 1):
            total += term
            term *= zeta / (k + 1)
        return total
    return complex(np.expm1(zeta)) / zeta


def base_flow(p: MatrixPair, base: AutoStep, time: complex) -> MatrixPair:
    """The base cm_flow of a shear at the given time (no membership check)."""
    if base.kind == CM_FLOW_Y:
        return _flow_y(p, base.poly, time)
    return _flow_x(p, base.poly, time)


@dataclass(frozen=True)
class FlowProfile:
    """
    f along the base flow, fitted as value + derivative*tau + curvature*tau^2.

    Attributes:
        value: f(p)
        derivative: Theta_p f
        curvature: half of Theta_p^2 f
        residual: max deviation of the samples from the fit
        kind: 'invariant' (shear-valid), 'degree_one' (overshear-valid) or 'higher'
    """
    value: complex
    derivative: complex
    curvature: complex
    residual: float
    kind: str


def _as_spec(f: Union[str, FunctionSpec]) -> FunctionSpec:
    return f if isinstance(f, FunctionSpec) else FunctionSpec(str(f))


def flow_profile(p: MatrixPair, base: AutoStep, f: Union[str, FunctionSpec],
                 tol: Optional[Tolerances] = None) -> FlowProfile:
    """Samples f at five times along the base flow and classifies its degree."""
    tol = tol or Tolerances()
    spec = _as_spec(f)
    values = np.array([spec.evaluate(base_flow(p, base, tau)) for tau in PROFILE_TIMES])
    vander = np.vander(PROFILE_TIMES, 3, increasing=True).astype(complex)
    coeffs, *_ = np.linalg.lstsq(vander, values, rcond=None)
    residual = float(np.max(np.abs(vander @ coeffs - values)))
    threshold = tol.flow_fit_tol * max(1.0, float(np.max(np.abs(values))))
    if residual > threshold:
        kind = HIGHER
    elif abs(coeffs[1]) <= threshold and abs(coeffs[2]) <= threshold:
        kind = INVARIANT
    elif abs(coeffs[2]) <= threshold:
        kind = DEGREE_ONE
    else:
        kind = HIGHER
    logger.debug("profile of %s along %s: kind=%s residual=%.2e", spec, base.kind, kind, residual)
    return FlowProfile(value=complex(values[2]), derivative=complex(coeffs[1]),
                       curvature=complex(coeffs[2]), residual=residual, kind=kind)


def apply_shear(p: MatrixPair, base: AutoStep, f: Union[str, FunctionSpec], t: complex,
                tol: Optional[Tolerances] = None) -> MatrixPair:
    """Base flow at time t*f(p); requires Theta(f) = 0 at p."""
    require_member(p, tol)
    profile = flow_profile(p, base, f, tol)
    if profile.kind != INVARIANT:
        raise NotInvariantError(
            f"not invariant: {f} changes along {base.kind} (Theta f = {profile.derivative:.3e})"
        )
    return base_flow(p, base, complex(t) * profile.value)


def overshear_time(profile: FlowProfile, t: complex) -> complex:
    t = complex(t)
    return eval_epsilon(t * profile.derivative) * t * profile.value


def apply_overshear(p: MatrixPair, base: AutoStep, f: Union[str, FunctionSpec], t: complex,
                    tol: Optional[Tolerances] = None) -> MatrixPair:
    """Base flow at time eps(t Theta_p f) t f(p); requires Theta^2 f = 0 and Theta f != 0."""
    require_member(p, tol)
    profile = flow_profile(p, base, f, tol)
    if profile.kind == INVARIANT:
        raise NotDegreeOneError(f"not degree-one: {f} is invariant along {base.kind}; use apply_shear")
    if profile.kind != DEGREE_ONE:
        raise NotDegreeOneError(f"not degree-one: {f} is not linear along {base.kind}")
    return base_flow(p, base, overshear_time(profile, t))
