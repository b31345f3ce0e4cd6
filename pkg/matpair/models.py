# matpair/models.py
"""
Data models for points of the Calogero-Moser space.

A MatrixPair is an explicit point (X, Y) of the space of matrix pairs with
rank([X,Y] + id) = 1; a WilsonChartPoint is its coordinate description on
the distinct-eigenvalue locus. All models are immutable and serialize to
the JSON schemas every other package reads.
"""

from dataclasses import dataclass, field, asdict
from typing import Optional

import numpy as np

from config.settings import DEFAULT_TOLERANCES
from .codec import matrix_from_json, matrix_to_json, vector_from_json, vector_to_json
from .errors import SchemaError


def _frozen_array(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    if arr.ndim != ndim:
        raise SchemaError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise SchemaError("entries must be finite (no NaN or infinity)")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Tolerances:
    """
    Numerical tolerances used throughout the package.

    Attributes:
        rank_tol: relative singular-value cutoff for rank decisions
        sep_tol: minimum eigenvalue separation on normalized data
        fd_step: finite-difference / complex-step size
        invertibility_floor: scale-relative determinant floor for conjugators
        flow_fit_tol: relative tolerance of the flow-profile polynomial fit
        equiv_tol: tolerance of fingerprint comparison
        min_gap: singular-value gap below which a rank decision is unreliable
        orbit_tol: tolerance of the Z2 x Z2 orbit comparison
    """
    rank_tol: float = DEFAULT_TOLERANCES['rank_tol']
    sep_tol: float = DEFAULT_TOLERANCES['sep_tol']
    fd_step: float = DEFAULT_TOLERANCES['fd_step']
    invertibility_floor: float = DEFAULT_TOLERANCES['invertibility_floor']
    flow_fit_tol: float = DEFAULT_TOLERANCES['flow_fit_tol']
    equiv_tol: float = DEFAULT_TOLERANCES['equiv_tol']
    min_gap: float = DEFAULT_TOLERANCES['min_gap']
    orbit_tol: float = DEFAULT_TOLERANCES['orbit_tol']

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise ValueError(f"tolerance {name} must be strictly positive, got {value}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'Tolerances':
        """Overrides on top of the defaults; unknown names are rejected."""
        if not isinstance(data, dict):
            raise SchemaError("tolerances must be an object of name: value")
        unknown = sorted(set(data) - set(cls.__dataclass_fields__))
        if unknown:
            raise SchemaError(f"unknown tolerance {', '.join(unknown)}")
        try:
            values = {k: float(v) for k, v in data.items()}
        except (TypeError, ValueError) as e:
            raise SchemaError(f"tolerance values must be numbers: {e}") from e
        return cls(**values)


@dataclass(frozen=True, eq=False)
class MatrixPair:
    """
    A pair (X, Y) of n x n complex matrices.

    Constructors accept any finite pair; membership (rank([X,Y] + id) = 1)
    is checked by the operations that require it, not here.

    Attributes:
        X: n x n complex matrix (read-only copy)
        Y: n x n complex matrix (read-only copy)
    """
    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X = _frozen_array(self.X, 2)
        Y = _frozen_array(self.Y, 2)
        if X.shape[0] != X.shape[1] or X.shape != Y.shape:
            raise SchemaError(f"X and Y must be square of equal size, got {X.shape} and {Y.shape}")
        object.__setattr__(self, 'X', X)
        object.__setattr__(self, 'Y', Y)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    def allclose(self, other: 'MatrixPair', atol: float = 1e-9) -> bool:
        """Entrywise comparison relative to the size of the entries."""
        if self.n != other.n:
            return False
        scale = max(1.0, np.abs(self.X).max(), np.abs(self.Y).max())
        return bool(
            np.allclose(self.X, other.X, rtol=0, atol=atol * scale)
            and np.allclose(self.Y, other.Y, rtol=0, atol=atol * scale)
        )

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'X': matrix_to_json(self.X),
            'Y': matrix_to_json(self.Y),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'MatrixPair':
        try:
            pair = cls(X=matrix_from_json(data['X']), Y=matrix_from_json(data['Y']))
        except KeyError as e:
            raise SchemaError(f"matrix pair is missing field {e}") from e
        except TypeError as e:
            raise SchemaError(f"matrix pair must be an object: {e}") from e
        if 'n' in data and data['n'] != pair.n:
            raise SchemaError(f"declared n={data['n']} does not match matrix size {pair.n}")
        return pair


@dataclass(frozen=True, eq=False)
class WilsonChartPoint:
    """
    Chart coordinates (lambda_1..lambda_n, alpha_1..alpha_n).

    The lambdas are the eigenvalues of X and must be pairwise distinct;
    the alphas are the diagonal of Y in the chart (not its eigenvalues).
    """
    lambdas: np.ndarray
    alphas: np.ndarray

    def __post_init__(self):
        lambdas = _frozen_array(self.lambdas, 1)
        alphas = _frozen_array(self.alphas, 1)
        if lambdas.shape != alphas.shape or lambdas.size == 0:
            raise SchemaError("lambdas and alphas must be non-empty and of equal length")
        object.__setattr__(self, 'lambdas', lambdas)
        object.__setattr__(self, 'alphas', alphas)

    @property
    def n(self) -> int:
        return self.lambdas.size

    @property
    def vector(self) -> np.ndarray:
        """Coordinates stacked as (lambda, alpha) in C^{2n}."""
        return np.concatenate([self.lambdas, self.alphas])

    @classmethod
    def from_vector(cls, vector) -> 'WilsonChartPoint':
        vector = np.asarray(vector, dtype=complex)
        half = vector.size // 2
        return cls(lambdas=vector[:half], alphas=vector[half:])

    def min_separation(self) -> float:
        """Smallest |lambda_i - lambda_j| relative to max(1, max |lambda|)."""
        if self.n < 2:
            return float('inf')
        diffs = np.abs(self.lambdas[:, None] - self.lambdas[None, :])
        diffs[np.diag_indices(self.n)] = np.inf
        scale = max(1.0, float(np.abs(self.lambdas).max()))
        return float(diffs.min()) / scale

    def to_dict(self) -> dict:
        return {
            'lambdas': vector_to_json(self.lambdas),
            'alphas': vector_to_json(self.alphas),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'WilsonChartPoint':
        try:
            return cls(lambdas=vector_from_json(data['lambdas']),
                       alphas=vector_from_json(data['alphas']))
        except KeyError as e:
            raise SchemaError(f"chart point is missing field {e}") from e


@dataclass(frozen=True)
class MembershipReport:
    """
    Result of the rank-one test on the commutator defect.

    Truthy iff the pair is a member.
    """
    member: bool
    sigma1: float
    sigma2: float
    diagnostic: Optional[str] = None
    ratio: float = field(init=False)

    def __post_init__(self):
        ratio = self.sigma2 / self.sigma1 if self.sigma1 > 0 else float('inf')
        object.__setattr__(self, 'ratio', ratio)

    def __bool__(self) -> bool:
        return self.member

    def to_dict(self) -> dict:
        return {
            'member': self.member,
            'sigma1': self.sigma1,
            'sigma2': self.sigma2,
            'ratio': self.ratio,
            'diagnostic': self.diagnostic,
        }
