"""
Unit tests for Calogero-Moser flows, SL2, the transpose swap, shears,
overshears and programs.
"""
import cmath
import math

import numpy as np
import pytest

from matpair.errors import (
    NonUnimodularError,
    NotAMemberError,
    NotDegreeOneError,
    NotInvariantError,
    ProgramStepError,
    SchemaError,
    SizeMismatchError,
    UnknownFunctionError,
)
from matpair.membership import commutator, commutator_defect, defect_ratio, from_wilson_chart, is_member
from matpair.models import MatrixPair, WilsonChartPoint
from matpair.sampling import sample
from automorphisms.flows import (
    apply_cm_flow_X,
    apply_cm_flow_Y,
    apply_sl2,
    apply_transpose_swap,
    matrix_polynomial,
    sl2_inverse,
)
from automorphisms.functions import CATALOG, FunctionSpec
from automorphisms.program import (
    apply_step,
    invert_program,
    program_contains_transpose_swap,
    random_program,
    random_sl2,
    run_program,
    step_base_flow,
)
from automorphisms.shears import (
    DEGREE_ONE,
    HIGHER,
    INVARIANT,
    apply_overshear,
    apply_shear,
    eval_epsilon,
    flow_profile,
)
from automorphisms.steps import SL2, TRANSPOSE_SWAP, AutoProgram, AutoStep

EPS = np.finfo(float).eps

# ||[X', Y'] - [X, Y]|| <= COMMUTATOR_FACTOR * eps * rounding scale
COMMUTATOR_FACTOR = 1e3

SHIFT_Y = AutoStep.cm_flow_y((1,), 0)
SHIFT_X = AutoStep.cm_flow_x((1,), 0)


@pytest.fixture
def wilson_pair():
    return from_wilson_chart(WilsonChartPoint(lambdas=[0, 1], alphas=[0, 0]))


@pytest.fixture
def member():
    return sample(3, 1, seed=21)[0]


def _product_scale(p: MatrixPair, q: MatrixPair) -> float:
    norm = np.linalg.norm
    return float(norm(p.X) * norm(p.Y) + norm(q.X) * norm(q.Y))


def _flow_scale(p: MatrixPair, q: MatrixPair, poly, t, M: np.ndarray) -> float:
    """Adds the rounding of t poly(M), which meets M in the commutator."""
    m = float(np.linalg.norm(M))
    increment = abs(t) * sum(abs(c) * m ** k for k, c in enumerate(poly))
    return _product_scale(p, q) + increment * m


def _sl2_scale(p: MatrixPair, q: MatrixPair, A) -> float:
    x, y = float(np.linalg.norm(p.X)), float(np.linalg.norm(p.Y))
    A = np.abs(np.asarray(A))
    return _product_scale(p, q) + (A[0, 0] * x + A[0, 1] * y) * (A[1, 0] * x + A[1, 1] * y)


def _assert_commutator_kept(p: MatrixPair, q: MatrixPair, scale: float) -> None:
    change = float(np.linalg.norm(commutator(q.X, q.Y) - commutator(p.X, p.Y)))
    assert change <= COMMUTATOR_FACTOR * EPS * scale, f"change {change / (EPS * scale):.1f} eps * scale"


def _random_poly(degree: int, rng: np.random.Generator) -> tuple:
    d = int(rng.integers(degree + 1))
    return tuple(rng.standard_normal(d + 1) + 1j * rng.standard_normal(d + 1))


class TestMatrixPolynomial:
    """Test Horner evaluation."""

    def test_matches_powers(self, member):
        X = member.X
        expected = 1 * np.eye(3) + 2 * X + 3 * X @ X
        np.testing.assert_allclose(matrix_polynomial([1, 2, 3], X), expected, atol=1e-12)

    def test_constant(self, member):
        np.testing.assert_array_equal(matrix_polynomial([5], member.X), 5 * np.eye(3))


class TestCalogeroMoserFlows:
    """Test (X, Y + t p(X)) and (X + t q(Y), Y)."""

    def test_constant_poly_shifts_y(self, member):
        q = apply_cm_flow_Y(member, [1], 0.5j)
        np.testing.assert_allclose(q.Y, member.Y + 0.5j * np.eye(3))
        shifted = np.sort_complex(np.linalg.eigvals(member.Y) + 0.5j)
        np.testing.assert_allclose(np.sort_complex(np.linalg.eigvals(q.Y)), shifted, atol=1e-10)

    def test_wilson_example(self, wilson_pair):
        q = apply_cm_flow_Y(wilson_pair, [0, 1], 2)
        np.testing.assert_array_equal(q.Y, [[0, -1], [1, 2]])
        np.testing.assert_allclose(commutator_defect(q), np.ones((2, 2)), atol=1e-15)

    def test_group_law(self, member):
        forward = apply_cm_flow_Y(member, [1, -2, 0.5], 0.3 + 0.1j)
        back = apply_cm_flow_Y(forward, [1, -2, 0.5], -(0.3 + 0.1j))
        assert back.allclose(member, atol=1e-14)

    def test_constant_poly_shifts_x(self, member):
        q = apply_cm_flow_X(member, [1], -2)
        np.testing.assert_allclose(q.X, member.X - 2 * np.eye(3))

    def test_zero_time_is_identity(self, member):
        assert apply_cm_flow_X(member, [3, 1], 0).allclose(member, atol=0)

    def test_flows_do_not_commute(self, member):
        xy = apply_cm_flow_X(apply_cm_flow_Y(member, [0, 1], 1), [0, 1], 1)
        yx = apply_cm_flow_Y(apply_cm_flow_X(member, [0, 1], 1), [0, 1], 1)
        assert not xy.allclose(yx, atol=1e-6)

    def test_commutator_exact(self):
        for p in sample(4, 5, seed=8):
            q = apply_cm_flow_Y(p, [0.3, -1, 0.2], 0.4)
            _assert_commutator_kept(p, q, _flow_scale(p, q, [0.3, -1, 0.2], 0.4, p.X))
            r = apply_cm_flow_X(q, [1, 0.5j], -0.7)
            _assert_commutator_kept(q, r, _flow_scale(q, r, [1, 0.5j], -0.7, q.Y))

    def test_non_member_rejected(self):
        with pytest.raises(NotAMemberError):
            apply_cm_flow_Y(MatrixPair(X=np.eye(2), Y=np.eye(2)), [1], 1)


class TestSL2:
    """Test the linear SL2 action."""

    def test_upper_unipotent_is_x_flow(self, member):
        t = 0.4 - 0.2j
        expected = apply_cm_flow_X(member, [0, 1], t)
        assert apply_sl2(member, [[1, t], [0, 1]]).allclose(expected, atol=1e-14)

    def test_lower_unipotent_is_y_flow(self, member):
        s = -1.5
        expected = apply_cm_flow_Y(member, [0, 1], s)
        assert apply_sl2(member, [[1, 0], [s, 1]]).allclose(expected, atol=1e-14)

    def test_minus_identity(self, member):
        q = apply_sl2(member, -np.eye(2))
        np.testing.assert_array_equal(q.X, -member.X)
        np.testing.assert_allclose(commutator_defect(q), commutator_defect(member), atol=1e-14)

    def test_non_unimodular_rejected(self, member):
        with pytest.raises(NonUnimodularError, match="non-unimodular matrix"):
            apply_sl2(member, 2 * np.eye(2))

    def test_inverse(self, rng):
        A = random_sl2(rng, scale=0.5)
        np.testing.assert_allclose(A @ sl2_inverse(A), np.eye(2), atol=1e-14)
        assert np.linalg.det(A) == pytest.approx(1.0)

    def test_commutator_exact(self, rng):
        for p in sample(3, 5, seed=9):
            A = random_sl2(rng)
            q = apply_sl2(p, A)
            _assert_commutator_kept(p, q, _sl2_scale(p, q, A))

    def test_composition(self, rng, member):
        A, B = random_sl2(rng, scale=0.5), random_sl2(rng, scale=0.5)
        twice = apply_sl2(apply_sl2(member, A), B)
        assert twice.allclose(apply_sl2(member, B @ A), atol=1e-12)


class TestTransposeSwap:
    """Test (X, Y) -> (Y^T, X^T)."""

    def test_involution(self, member):
        assert apply_transpose_swap(apply_transpose_swap(member)).allclose(member, atol=0)

    def test_one_by_one_swaps(self):
        q = apply_transpose_swap(MatrixPair(X=[[2]], Y=[[7]]))
        assert q.X[0, 0] == 7 and q.Y[0, 0] == 2

    def test_keeps_membership(self):
        for p in sample(4, 5, seed=10):
            assert is_member(apply_transpose_swap(p))


class TestEvalEpsilon:
    """Test eps(z) = (e^z - 1)/z."""

    def test_zero(self):
        assert eval_epsilon(0) == 1

    def test_log_two(self):
        assert eval_epsilon(math.log(2)) == pytest.approx(1 / math.log(2), rel=1e-14)

    def test_defining_identity(self, rng):
        zetas = 3 * (rng.standard_normal(1000) + 1j * rng.standard_normal(1000))
        for z in zetas:
            assert eval_epsilon(z) * z + 1 == pytest.approx(cmath.exp(z), rel=1e-12, abs=1e-12)

    def test_continuous_at_series_radius(self):
        below = eval_epsilon(0.999e-3)
        above = eval_epsilon(1.001e-3)
        assert abs(below - above) < 1e-6
        assert below == pytest.approx(math.expm1(0.999e-3) / 0.999e-3, rel=1e-14)


class TestFunctionSpec:
    """Test the closed function catalog."""

    def test_evaluates_catalog_polynomial(self, member):
        f = FunctionSpec("tr_X^2 - 4*det_X")
        expected = complex(np.trace(member.X)) ** 2 - 4 * complex(np.linalg.det(member.X))
        assert f.evaluate(member) == pytest.approx(expected)
        assert f.generators == ('det_X', 'tr_X')

    def test_constant_spec(self, member):
        assert FunctionSpec("1").evaluate(member) == 1

    def test_unknown_name_rejected(self):
        with pytest.raises(UnknownFunctionError, match="unknown function"):
            FunctionSpec("tr_Z + 1")

    def test_code_cannot_be_named(self):
        with pytest.raises(UnknownFunctionError):
            FunctionSpec("__import__")

    def test_non_polynomial_rejected(self):
        with pytest.raises(UnknownFunctionError, match="not a polynomial"):
            FunctionSpec("1/tr_X")

    def test_two_by_two_generators_need_n_two(self, member):
        with pytest.raises(SizeMismatchError):
            FunctionSpec("delta2").evaluate(member)

    def test_catalog_has_compatible_pair_names(self):
        assert {'a', 'b', 'delta2', 'eps2', 'w'} <= set(CATALOG)


class TestShear:
    """Test shears of Calogero-Moser flows by invariant functions."""

    def test_trace_plus_determinant_example(self, member):
        t = 0.25
        f = complex(np.trace(member.X)) + complex(np.linalg.det(member.X))
        q = apply_shear(member, SHIFT_Y, "tr_X + det_X", t)
        np.testing.assert_array_equal(q.X, member.X)
        np.testing.assert_allclose(q.Y, member.Y + t * f * np.eye(3), atol=1e-12)

    def test_constant_function_is_base_flow(self, member):
        base = AutoStep.cm_flow_x((0, 1), 0)
        q = apply_shear(member, base, "1", 0.3)
        assert q.allclose(apply_cm_flow_X(member, [0, 1], 0.3), atol=1e-13)

    def test_squared_gap_shear(self, wilson_pair):
        q = apply_shear(wilson_pair, SHIFT_Y, "tr_Y^2 - 4*det_Y", 0.5)
        # Y has eigenvalues +-i, so eps^2 = -4
        np.testing.assert_allclose(q.Y, wilson_pair.Y - 2 * np.eye(2), atol=1e-12)
        assert is_member(q)

    def test_non_invariant_rejected(self, member):
        with pytest.raises(NotInvariantError, match="not invariant"):
            apply_shear(member, SHIFT_Y, "tr_Y", 1.0)

    def test_profile_kinds(self, member):
        assert flow_profile(member, SHIFT_Y, "tr_X").kind == INVARIANT
        assert flow_profile(member, SHIFT_Y, "tr_Y").kind == DEGREE_ONE
        assert flow_profile(member, SHIFT_Y, "tr_Y^2").kind == HIGHER
        assert flow_profile(member, SHIFT_Y, "tr_Y").derivative == pytest.approx(3)


class TestOvershear:
    """Test overshears by degree-one functions."""

    def test_invariant_function_redirected(self, member):
        with pytest.raises(NotDegreeOneError, match="use apply_shear"):
            apply_overshear(member, SHIFT_Y, "tr_X", 1.0)

    def test_higher_degree_rejected(self, member):
        with pytest.raises(NotDegreeOneError, match="not degree-one"):
            apply_overshear(member, SHIFT_Y, "tr_Y^2", 1.0)

    def test_trace_example(self, member):
        t = 0.2 + 0.1j
        tr_y = complex(np.trace(member.Y))
        q = apply_overshear(member, SHIFT_Y, "tr_Y", t)
        expected = member.Y + eval_epsilon(3 * t) * t * tr_y * np.eye(3)
        np.testing.assert_allclose(q.Y, expected, atol=1e-10)

    def test_group_law(self, member):
        t, s = 0.3, -0.45 + 0.2j
        twice = apply_overshear(apply_overshear(member, SHIFT_Y, "tr_Y", t), SHIFT_Y, "tr_Y", s)
        once = apply_overshear(member, SHIFT_Y, "tr_Y", t + s)
        assert twice.allclose(once, atol=1e-9)

    def test_zero_time_is_identity(self, member):
        assert apply_overshear(member, SHIFT_X, "tr_X", 0).allclose(member, atol=0)


class TestProgram:
    """Test programs, their inverses and traces."""

    def test_empty_program(self, member):
        result = run_program(member, AutoProgram())
        assert result.pair is member
        assert result.trace == []

    def test_apply_step_dispatches(self, wilson_pair):
        moved = apply_step(wilson_pair, SHIFT_Y.with_time(2))
        assert moved.allclose(apply_cm_flow_Y(wilson_pair, (1,), 2), atol=0)
        np.testing.assert_array_equal(moved.Y, wilson_pair.Y + 2 * np.eye(2))

    def test_step_base_flow(self):
        assert step_base_flow(AutoStep.shear(SHIFT_Y, "tr_X", 0.1)) == SHIFT_Y
        assert step_base_flow(SHIFT_X) == SHIFT_X
        with pytest.raises(ValueError):
            step_base_flow(AutoStep.transpose_swap())

    def test_transpose_swap_flag(self):
        assert not program_contains_transpose_swap(AutoProgram(steps=(SHIFT_Y,)))
        assert program_contains_transpose_swap(AutoProgram(steps=(SHIFT_Y, AutoStep.transpose_swap())))

    def test_round_trip_with_inverse(self, member, rng):
        program = random_program(20, rng)
        result = run_program(member, program.then(invert_program(program)))
        assert result.pair.allclose(member, atol=1e-9)

    def test_shear_steps_round_trip(self, member):
        program = AutoProgram(steps=(
            AutoStep.shear(SHIFT_Y, "tr_X + det_X", 0.2),
            AutoStep.overshear(SHIFT_Y, "tr_Y", -0.3),
            AutoStep.transpose_swap(),
        ))
        result = run_program(member, program.then(invert_program(program)))
        assert result.pair.allclose(member, atol=1e-9)

    def test_long_random_program_stays_in_space(self, rng):
        p = from_wilson_chart(WilsonChartPoint(lambdas=[0, 1, 2j], alphas=[0.5, 0, -1]))
        result = run_program(p, random_program(100, rng))
        assert len(result.trace) == 100
        assert result.max_ratio < 1e-8

    def test_failing_step_reports_index(self, member):
        program = AutoProgram(steps=(SHIFT_Y.with_time(1), AutoStep.sl2(2 * np.eye(2))))
        with pytest.raises(ProgramStepError) as excinfo:
            run_program(member, program)
        assert excinfo.value.index == 1
        assert isinstance(excinfo.value.cause, NonUnimodularError)

    def test_transpose_swap_flagged(self, member):
        result = run_program(member, AutoProgram(steps=(AutoStep.transpose_swap(),)))
        assert result.contains_transpose_swap
        assert result.to_dict()['contains_transpose_swap'] is True

    def test_inverse_structure(self, rng):
        A = random_sl2(rng)
        program = AutoProgram(steps=(SHIFT_Y.with_time(2), AutoStep.sl2(A), AutoStep.transpose_swap()))
        inverse = invert_program(program)
        assert [s.kind for s in inverse] == [TRANSPOSE_SWAP, SL2, 'cm_flow_Y']
        np.testing.assert_allclose(inverse.steps[1].A @ A, np.eye(2), atol=1e-14)
        assert inverse.steps[2].t == -2

    def test_program_json(self):
        program = AutoProgram(steps=(
            AutoStep.cm_flow_x((1, 2j), 0.5),
            AutoStep.shear(SHIFT_Y, "tr_X", 1j),
            AutoStep.transpose_swap(),
        ))
        data = program.to_dict()
        assert data['steps'][0] == {'kind': 'cm_flow_X', 'poly': [[1.0, 0.0], [0.0, 2.0]], 't': [0.5, 0.0]}
        restored = AutoProgram.from_dict(data)
        assert [s.kind for s in restored] == ['cm_flow_X', 'shear', 'transpose_swap']
        assert restored.steps[1].f == "tr_X"

    def test_unknown_step_kind(self):
        with pytest.raises(SchemaError, match="unknown step kind"):
            AutoProgram.from_dict({'steps': [{'kind': 'rotate'}]})

    @pytest.mark.parametrize("step", [
        {'kind': 'cm_flow_Y', 'poly': 5, 't': [1, 0]},
        {'kind': 'cm_flow_X', 'poly': [[1, 0]], 't': 'soon'},
        {'kind': 'sl2', 'A': 7},
        {'kind': 'shear', 'base': [1, 2], 'f': 'tr_X', 't': [0, 0]},
        {'kind': 'cm_flow_Y', 'poly': [None]},
    ])
    def test_wrong_field_types(self, step):
        with pytest.raises(SchemaError, match="step 1"):
            AutoProgram.from_dict({'steps': [{'kind': 'transpose_swap'}, step]})


def _all_step_kinds(n: int, rng: np.random.Generator):
    for degree in range(n + 1):
        poly = tuple(rng.standard_normal(degree + 1))
        yield AutoStep.cm_flow_y(poly, 0.1)
        yield AutoStep.cm_flow_x(poly, -0.1j)
    for _ in range(5):
        yield AutoStep.sl2(random_sl2(rng))
    yield AutoStep.transpose_swap()
    yield AutoStep.shear(SHIFT_Y, "tr_X + det_X", 0.1)
    yield AutoStep.overshear(SHIFT_Y, "tr_Y", 0.1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_every_step_conserves_membership(n, rng):
    for p in sample(n, 10, seed=100 + n):
        for step in _all_step_kinds(n, rng):
            result = run_program(p, AutoProgram(steps=(step,)))
            assert result.max_ratio < 1e-8, step.kind


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 7))
def test_every_step_conserves_membership_full(n, rng):
    for p in sample(n, 100, seed=200 + n):
        for step in _all_step_kinds(n, rng):
            assert defect_ratio(run_program(p, AutoProgram(steps=(step,))).pair) < 1e-8


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 7))
def test_commutator_kept_thousand_trials(n):
    rng = np.random.default_rng(300 + n)
    for p in sample(n, 200, seed=300 + n):
        for _ in range(5):
            poly = _random_poly(n, rng)
            q = apply_cm_flow_Y(p, poly, 0.1)
            _assert_commutator_kept(p, q, _flow_scale(p, q, poly, 0.1, p.X))
            q = apply_cm_flow_X(p, poly, -0.1j)
            _assert_commutator_kept(p, q, _flow_scale(p, q, poly, -0.1j, p.Y))
            A = random_sl2(rng)
            q = apply_sl2(p, A)
            _assert_commutator_kept(p, q, _sl2_scale(p, q, A))
