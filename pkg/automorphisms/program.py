# automorphisms/program.py
"""
Program engine: step dispatch, left-to-right execution with a membership
trace, formal inverses and random programs for stress runs.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.linalg import expm

from matpair.errors import CMSpaceError, ProgramStepError
from matpair.membership import defect_ratio
from matpair.models import MatrixPair, Tolerances
from .flows import apply_cm_flow_X, apply_cm_flow_Y, apply_sl2, apply_transpose_swap, sl2_inverse
from .shears import apply_overshear, apply_shear
from .steps import (
    CM_FLOW_X,
    CM_FLOW_Y,
    OVERSHEAR,
    SHEAR,
    SL2,
    TRANSPOSE_SWAP,
    AutoProgram,
    AutoStep,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProgramResult:
    """
    Output of run_program.

    Attributes:
        pair: the image of the input pair
        trace: sigma2/sigma1 of the defect after every step
        contains_transpose_swap: whether the program used the swap, whose
            identity-component status is unknown
    """
    pair: MatrixPair
    trace: List[float] = field(default_factory=list)
    contains_transpose_swap: bool = False

    @property
    def max_ratio(self) -> float:
        return max(self.trace, default=0.0)

    def to_dict(self) -> dict:
        return {
            'pair': self.pair.to_dict(),
            'trace': list(self.trace),
            'contains_transpose_swap': self.contains_transpose_swap,
        }


def step_base_flow(step: AutoStep) -> AutoStep:
    """The cm_flow a step moves along (itself for plain flows)."""
    if step.kind in (SHEAR, OVERSHEAR):
        return step.base
    if step.kind in (CM_FLOW_X, CM_FLOW_Y):
        return step
    raise ValueError(f"{step.kind} step has no base flow")


def program_contains_transpose_swap(prog: AutoProgram) -> bool:
    return prog.contains_transpose_swap


def apply_step(p: MatrixPair, step: AutoStep, tol: Optional[Tolerances] = None) -> MatrixPair:
    """Applies one step; every branch checks membership of p."""
    if step.kind == CM_FLOW_Y:
        return apply_cm_flow_Y(p, step.poly, step.t, tol)
    if step.kind == CM_FLOW_X:
        return apply_cm_flow_X(p, step.poly, step.t, tol)
    if step.kind == SL2:
        return apply_sl2(p, step.A, tol)
    if step.kind == TRANSPOSE_SWAP:
        return apply_transpose_swap(p, tol)
    if step.kind == SHEAR:
        return apply_shear(p, step_base_flow(step), step.f, step.t, tol)
    return apply_overshear(p, step_base_flow(step), step.f, step.t, tol)


def run_program(p: MatrixPair, prog: AutoProgram, tol: Optional[Tolerances] = None) -> ProgramResult:
    """
    Runs the steps left to right.

    Raises:
        ProgramStepError: wraps the failing step's error with its index
    """
    tol = tol or Tolerances()
    current = p
    trace: List[float] = []
    for index, step in enumerate(prog):
        try:
            current = apply_step(current, step, tol)
        except CMSpaceError as e:
            logger.info("program failed at step %d (%s): %s", index, step.kind, e)
            raise ProgramStepError(index, e) from e
        trace.append(defect_ratio(current))
    if trace:
        logger.debug("program of %d steps done, max ratio %.3e", len(trace), max(trace))
    return ProgramResult(pair=current, trace=trace, contains_transpose_swap=program_contains_transpose_swap(prog))


def invert_step(step: AutoStep) -> AutoStep:
    if step.kind == SL2:
        return AutoStep.sl2(sl2_inverse(step.A))
    if step.kind == TRANSPOSE_SWAP:
        return step
    # flows, shears and overshears are one-parameter groups in t
    return step.with_time(-step.t)


def invert_program(prog: AutoProgram) -> AutoProgram:
    """Reversed steps, each replaced by its group inverse."""
    return AutoProgram(steps=tuple(invert_step(step) for step in reversed(prog.steps)))


def random_sl2(rng: np.random.Generator, scale: float = 0.1) -> np.ndarray:
    """exp of a random traceless matrix: a unit-determinant A near the identity."""
    B = scale * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
    B -= 0.5 * np.trace(B) * np.eye(2)
    return expm(B)


def random_program(n_steps: int,
                   rng: np.random.Generator,
                   max_degree: int = 1,
                   time_scale: float = 0.1,
                   swap_probability: float = 0.1) -> AutoProgram:
    """
    Random program over cm_flow_X/Y, sl2 and transpose_swap.

    Times and sl2 elements stay close to the identity so that long
    programs keep the pair well scaled.
    """
    steps = []
    for _ in range(n_steps):
        u = rng.random()
        if u < swap_probability:
            steps.append(AutoStep.transpose_swap())
            continue
        choice = rng.integers(3)
        if choice == 2:
            steps.append(AutoStep.sl2(random_sl2(rng, time_scale)))
            continue
        degree = int(rng.integers(max_degree + 1))
        poly = tuple(complex(c) for c in rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1))
        t = complex(time_scale * rng.standard_normal(), time_scale * rng.standard_normal())
        if choice == 0:
            steps.append(AutoStep.cm_flow_y(poly, t))
        else:
            steps.append(AutoStep.cm_flow_x(poly, t))
    return AutoProgram(steps=tuple(steps))
