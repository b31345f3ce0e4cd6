# automorphisms/steps.py
"""
Program data: single automorphism steps and ordered programs of them.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from matpair.codec import complex_from_json, complex_to_json, matrix_from_json, matrix_to_json
from matpair.errors import SchemaError

CM_FLOW_Y = 'cm_flow_Y'
CM_FLOW_X = 'cm_flow_X'
SL2 = 'sl2'
TRANSPOSE_SWAP = 'transpose_swap'
SHEAR = 'shear'
OVERSHEAR = 'overshear'

KINDS = (CM_FLOW_Y, CM_FLOW_X, SL2, TRANSPOSE_SWAP, SHEAR, OVERSHEAR)
FLOW_KINDS = (CM_FLOW_Y, CM_FLOW_X)


@dataclass(frozen=True, eq=False)
class AutoStep:
    """
    One automorphism step.

    Attributes:
        kind: one of KINDS
        t: complex time (flows, shears, overshears)
        poly: ascending coefficients of p (cm_flow_Y) or q (cm_flow_X)
        A: unit-determinant 2x2 matrix (sl2)
        base: the flow a shear or overshear is built on (a cm_flow step;
            its own time is ignored)
        f: function spec of the shear/overshear, a catalog expression
    """
    kind: str
    t: complex = 0j
    poly: Tuple[complex, ...] = ()
    A: Optional[np.ndarray] = None
    base: Optional['AutoStep'] = None
    f: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown step kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        object.__setattr__(self, 't', complex(self.t))
        object.__setattr__(self, 'poly', tuple(complex(c) for c in self.poly))
        if self.kind in FLOW_KINDS and not self.poly:
            raise SchemaError(f"{self.kind} step needs a non-empty poly")
        if self.kind == SL2:
            if self.A is None:
                raise SchemaError("sl2 step needs a matrix A")
            A = np.array(self.A, dtype=complex)
            if A.shape != (2, 2) or not np.all(np.isfinite(A)):
                raise SchemaError(f"sl2 matrix must be a finite 2x2 matrix, got shape {A.shape}")
            A.setflags(write=False)
            object.__setattr__(self, 'A', A)
        if self.kind in (SHEAR, OVERSHEAR):
            if self.base is None or self.base.kind not in FLOW_KINDS:
                raise SchemaError(f"{self.kind} step needs a cm_flow_X or cm_flow_Y base")
            if not self.f:
                raise SchemaError(f"{self.kind} step needs a function spec f")

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def cm_flow_y(cls, poly: Sequence[complex], t: complex) -> 'AutoStep':
        """(X, Y) -> (X, Y + t p(X))."""
        return cls(kind=CM_FLOW_Y, t=t, poly=tuple(poly))

    @classmethod
    def cm_flow_x(cls, poly: Sequence[complex], t: complex) -> 'AutoStep':
        """(X, Y) -> (X + t q(Y), Y)."""
        return cls(kind=CM_FLOW_X, t=t, poly=tuple(poly))

    @classmethod
    def sl2(cls, A) -> 'AutoStep':
        return cls(kind=SL2, A=A)

    @classmethod
    def transpose_swap(cls) -> 'AutoStep':
        return cls(kind=TRANSPOSE_SWAP)

    @classmethod
    def shear(cls, base: 'AutoStep', f: str, t: complex) -> 'AutoStep':
        return cls(kind=SHEAR, base=base, f=f, t=t)

    @classmethod
    def overshear(cls, base: 'AutoStep', f: str, t: complex) -> 'AutoStep':
        return cls(kind=OVERSHEAR, base=base, f=f, t=t)

    def with_time(self, t: complex) -> 'AutoStep':
        return AutoStep(kind=self.kind, t=t, poly=self.poly, A=self.A, base=self.base, f=self.f)

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------

    def to_dict(self) -> dict:
        data = {'kind': self.kind}
        if self.kind in FLOW_KINDS:
            data['poly'] = [complex_to_json(c) for c in self.poly]
            data['t'] = complex_to_json(self.t)
        elif self.kind == SL2:
            data['A'] = matrix_to_json(self.A)
        elif self.kind in (SHEAR, OVERSHEAR):
            data['base'] = self.base.to_dict()
            data['f'] = self.f
            data['t'] = complex_to_json(self.t)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'AutoStep':
        if not isinstance(data, dict) or 'kind' not in data:
            raise SchemaError("step must be an object with a 'kind' field")
        kind = data['kind']
        try:
            if kind in FLOW_KINDS:
                poly = data['poly']
                if not isinstance(poly, list):
                    raise SchemaError(f"{kind} step: poly must be a list of [re, im] coefficients")
                return cls(kind=kind,
                           poly=tuple(complex_from_json(c) for c in poly),
                           t=complex_from_json(data.get('t', [0.0, 0.0])))
            if kind == SL2:
                return cls(kind=kind, A=matrix_from_json(data['A']))
            if kind == TRANSPOSE_SWAP:
                return cls(kind=kind)
            if kind in (SHEAR, OVERSHEAR):
                return cls(kind=kind,
                           base=cls.from_dict(data['base']),
                           f=str(data['f']),
                           t=complex_from_json(data.get('t', [0.0, 0.0])))
        except KeyError as e:
            raise SchemaError(f"{kind} step is missing field {e}") from e
        except TypeError as e:
            raise SchemaError(f"{kind} step has a field of the wrong type: {e}") from e
        raise SchemaError(f"unknown step kind {kind!r}")


@dataclass(frozen=True)
class AutoProgram:
    """An ordered list of steps, applied left to right."""
    steps: Tuple[AutoStep, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, 'steps', tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def then(self, other: 'AutoProgram') -> 'AutoProgram':
        return AutoProgram(steps=self.steps + other.steps)

    @property
    def contains_transpose_swap(self) -> bool:
        """Flag for reports: the swap's identity-component status is open."""
        return any(step.kind == TRANSPOSE_SWAP for step in self.steps)

    def to_dict(self) -> dict:
        return {'steps': [step.to_dict() for step in self.steps]}

    @classmethod
    def from_dict(cls, data: dict) -> 'AutoProgram':
        if not isinstance(data, dict) or not isinstance(data.get('steps'), list):
            raise SchemaError("program must be an object with a 'steps' list")
        steps: List[AutoStep] = []
        for index, step in enumerate(data['steps']):
            try:
                steps.append(AutoStep.from_dict(step))
            except (SchemaError, TypeError) as e:
                raise SchemaError(f"step {index}: {e}") from e
        return cls(steps=tuple(steps))
