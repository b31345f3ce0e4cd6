# cm2/coords.py
"""
Coordinates (lambda, eps, x11, x21, delta) of the n = 2 model.

Components are Python complex numbers (float backend) or sympy QQ_I
Gaussian rationals (exact backend). The model code only uses ring
operations and division by x21, so both backends run the same code.
"""

import math
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Any, Dict, Tuple, Union

from sympy.polys.domains import QQ, QQ_I

from matpair.codec import complex_from_json, complex_to_json
from matpair.errors import SchemaError

EXACT = 'exact'
FLOAT = 'float'

GaussianRational = QQ_I.dtype
Scalar = Union[complex, GaussianRational]

FIELD_NAMES = ('lam', 'eps', 'x11', 'x21', 'delta')
JSON_NAMES = ('lambda', 'eps', 'x11', 'x21', 'delta')


def is_exact(value: Any) -> bool:
    return isinstance(value, GaussianRational)


def _rational(value) -> Any:
    if isinstance(value, float):
        if not math.isfinite(value):
            raise SchemaError(f"cannot convert non-finite value {value} to a rational")
        return QQ(*value.as_integer_ratio())
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(int(value))


def exact_value(value) -> GaussianRational:
    """Converts int, Fraction, float or complex to a Gaussian rational (binary floats exactly)."""
    if is_exact(value):
        return value
    if isinstance(value, complex):
        return QQ_I(_rational(value.real), _rational(value.imag))
    return QQ_I(_rational(value), QQ(0))


def gaussian(re, im=0) -> GaussianRational:
    """Gaussian rational from rational parts, e.g. gaussian(Fraction(1, 2), -1)."""
    return QQ_I(_rational(re), _rational(im))


def _q_to_float(q) -> float:
    return int(q.numerator) / int(q.denominator)


def float_value(value) -> complex:
    if is_exact(value):
        return complex(_q_to_float(value.x), _q_to_float(value.y))
    return complex(value)


def one_like(value) -> Scalar:
    return QQ_I.one if is_exact(value) else 1.0 + 0j


def is_zero(value, atol: float = 0.0) -> bool:
    """Exact zero test for Gaussian rationals; |value| <= atol for floats."""
    if is_exact(value):
        return not value
    return abs(value) <= atol


def magnitude(value) -> float:
    return abs(float_value(value))


def rational_to_json(value: GaussianRational) -> Dict[str, Any]:
    """(a + b i)/c as {"num": [a, b], "den": c} with integer a, b and c > 0."""
    den = math.lcm(int(value.x.denominator), int(value.y.denominator))
    a = int(value.x.numerator) * (den // int(value.x.denominator))
    b = int(value.y.numerator) * (den // int(value.y.denominator))
    return {'num': [a, b], 'den': den}


def rational_from_json(data: Any) -> GaussianRational:
    try:
        a, b = data['num']
        den = data['den']
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (a, b, den)) or den == 0:
            raise SchemaError(f"rational encoding needs integer num and non-zero den, got {data!r}")
        return QQ_I(QQ(a, den), QQ(b, den))
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"malformed rational encoding {data!r}") from e


@dataclass(frozen=True)
class CM2Coords:
    """
    A point (lambda, eps, x11, x21, delta) of the model variety.

    Attributes:
        lam: lower eigenvalue of Y
        eps: eigenvalue gap of Y
        x11: upper-left entry of X
        x21: lower-left entry of X (non-zero on the variety)
        delta: x22 - x11
    """
    lam: Scalar
    eps: Scalar
    x11: Scalar
    x21: Scalar
    delta: Scalar

    @property
    def components(self) -> Tuple[Scalar, ...]:
        return tuple(getattr(self, name) for name in FIELD_NAMES)

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.components)

    @property
    def backend(self) -> str:
        return EXACT if self.exact else FLOAT

    def replace(self, **changes) -> 'CM2Coords':
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return CM2Coords(**values)

    def to_dict(self) -> dict:
        data = {key: complex_to_json(float_value(v)) for key, v in zip(JSON_NAMES, self.components)}
        if self.exact:
            data['exact'] = {key: rational_to_json(v) for key, v in zip(JSON_NAMES, self.components)}
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'CM2Coords':
        if not isinstance(data, dict):
            raise SchemaError("CM2Coords must be an object")
        try:
            if data.get('exact') is not None:
                exact = data['exact']
                values = [rational_from_json(exact[key]) for key in JSON_NAMES]
            else:
                values = [complex_from_json(data[key]) for key in JSON_NAMES]
        except KeyError as e:
            raise SchemaError(f"CM2Coords is missing field {e}") from e
        return cls(*values)


def to_exact(c: CM2Coords) -> CM2Coords:
    return CM2Coords(*(exact_value(v) for v in c.components))


def to_float(c: CM2Coords) -> CM2Coords:
    return CM2Coords(*(float_value(v) for v in c.components))


@dataclass(frozen=True)
class CM2Generators:
    """
    The five ring generators evaluated at a point.

    Attributes:
        d2: delta^2
        e2: eps^2
        tr_y: 2 lambda + eps
        tr_x: 2 x11 + delta
        w: x21 + 1/x21
    """
    d2: Scalar
    e2: Scalar
    tr_y: Scalar
    tr_x: Scalar
    w: Scalar

    NAMES = ('d2', 'e2', 'tr_y', 'tr_x', 'w')

    def values(self) -> Tuple[Scalar, ...]:
        return tuple(getattr(self, name) for name in self.NAMES)

    def to_dict(self) -> dict:
        return {name: complex_to_json(float_value(getattr(self, name))) for name in self.NAMES}
