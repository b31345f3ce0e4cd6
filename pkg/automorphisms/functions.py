# automorphisms/functions.py
"""
Closed catalog of invariant-function generators for shears and overshears.

A function spec is a polynomial expression in the catalog names, e.g.
``"tr_X + det_X"`` or ``"tr_Y^2 - 4*det_Y"``. The expression is checked
token by token against the catalog before sympy parses it, so nothing
outside the catalog can be named or evaluated.
"""

import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Tuple

import numpy as np
import sympy as sp

from matpair.errors import SizeMismatchError, UnknownFunctionError
from matpair.models import MatrixPair


def _tr(M: np.ndarray) -> complex:
    return complex(np.trace(M))


def _det(M: np.ndarray) -> complex:
    return complex(np.linalg.det(M))


@dataclass(frozen=True)
class Generator:
    name: str
    evaluate: Callable[[MatrixPair], complex]
    description: str
    only_n: int = 0     # 0: any n


# delta2, eps2 and w are the C2 generators written with traces and determinants:
# delta^2 = (tr X)^2 - 4 det X, eps^2 = (tr Y)^2 - 4 det Y, x21 + 1/x21 = 2 tr XY - tr X tr Y.
CATALOG: Dict[str, Generator] = {
    g.name: g for g in (
        Generator('tr_X', lambda p: _tr(p.X), 'trace of X'),
        Generator('det_X', lambda p: _det(p.X), 'determinant of X'),
        Generator('tr_Y', lambda p: _tr(p.Y), 'trace of Y'),
        Generator('det_Y', lambda p: _det(p.Y), 'determinant of Y'),
        Generator('tr_XY', lambda p: _tr(p.X @ p.Y), 'trace of XY'),
        Generator('a', lambda p: _tr(p.Y), 'tr Y, the degree-one element of the compatible pair'),
        Generator('b', lambda p: _tr(p.X), 'tr X'),
        Generator('delta2', lambda p: _tr(p.X) ** 2 - 4 * _det(p.X),
                  'squared eigenvalue gap of X', only_n=2),
        Generator('eps2', lambda p: _tr(p.Y) ** 2 - 4 * _det(p.Y),
                  'squared eigenvalue gap of Y', only_n=2),
        Generator('w', lambda p: 2 * _tr(p.X @ p.Y) - _tr(p.X) * _tr(p.Y),
                  'x21 + 1/x21 in the C2 model', only_n=2),
    )
}

_TOKEN = re.compile(r"\s*(?:(\d+\.?\d*(?:[eE][+-]?\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")
_ALLOWED_NAMES = set(CATALOG) | {'I'}


def _check_tokens(expression: str) -> str:
    pos = 0
    out = []
    text = expression.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise UnknownFunctionError(f"unexpected character in function spec at {text[pos:]!r}")
        number, name, op = match.groups()
        if name is not None and name not in _ALLOWED_NAMES:
            raise UnknownFunctionError(
                f"unknown function {name!r}; catalog: {', '.join(sorted(CATALOG))}"
            )
        out.append(number or name or ('**' if op == '^' else op))
        pos = match.end()
    if not out:
        raise UnknownFunctionError("empty function spec")
    return ' '.join(out)


@dataclass(frozen=True)
class FunctionSpec:
    """
    A polynomial in catalog generators.

    Attributes:
        expression: source text as written in programs and JSON
    """
    expression: str
    _expr: sp.Expr = field(init=False, repr=False, compare=False)
    _names: Tuple[str, ...] = field(init=False, repr=False, compare=False)
    _fn: Callable = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cleaned = _check_tokens(self.expression)
        symbols = {name: sp.Symbol(name) for name in CATALOG}
        try:
            expr = sp.sympify(cleaned, locals={**symbols, 'I': sp.I})
        except (sp.SympifyError, SyntaxError, TypeError) as e:
            raise UnknownFunctionError(f"cannot parse function spec {self.expression!r}: {e}") from e
        used = sorted(s.name for s in expr.free_symbols)
        if not expr.is_polynomial(*[symbols[name] for name in used]):
            raise UnknownFunctionError(f"function spec {self.expression!r} is not a polynomial in the generators")
        fn = sp.lambdify([symbols[name] for name in used], expr, modules='numpy')
        object.__setattr__(self, '_expr', expr)
        object.__setattr__(self, '_names', tuple(used))
        object.__setattr__(self, '_fn', fn)

    @property
    def generators(self) -> Tuple[str, ...]:
        return self._names

    def evaluate(self, p: MatrixPair) -> complex:
        values = []
        for name in self._names:
            generator = CATALOG[name]
            if generator.only_n and generator.only_n != p.n:
                raise SizeMismatchError(f"generator {name} is defined for n={generator.only_n} only, got n={p.n}")
            values.append(generator.evaluate(p))
        return complex(self._fn(*values))

    def __str__(self) -> str:
        return self.expression
