# automorphisms/__init__.py
"""
Calogero-Moser flows, the SL2 action, the transpose swap, shears,
overshears and the program engine composing them.
"""

from .steps import AutoStep, AutoProgram, KINDS
from .functions import CATALOG, FunctionSpec
from .flows import (
    matrix_polynomial,
    apply_cm_flow_Y,
    apply_cm_flow_X,
    apply_sl2,
    apply_transpose_swap,
    check_unimodular,
    sl2_inverse,
)
from .shears import eval_epsilon, FlowProfile, flow_profile, apply_shear, apply_overshear
from .program import (
    ProgramResult,
    apply_step,
    run_program,
    invert_program,
    step_base_flow,
    program_contains_transpose_swap,
    random_sl2,
    random_program,
)

__all__ = [
    'AutoStep',
    'AutoProgram',
    'KINDS',
    'CATALOG',
    'FunctionSpec',
    'matrix_polynomial',
    'apply_cm_flow_Y',
    'apply_cm_flow_X',
    'apply_sl2',
    'apply_transpose_swap',
    'check_unimodular',
    'sl2_inverse',
    'eval_epsilon',
    'FlowProfile',
    'flow_profile',
    'apply_shear',
    'apply_overshear',
    'ProgramResult',
    'apply_step',
    'run_program',
    'invert_program',
    'step_base_flow',
    'program_contains_transpose_swap',
    'random_sl2',
    'random_program',
]
