"""
Unit tests for the n = 2 model and the compatible-pair certificate.
"""
from fractions import Fraction

import numpy as np
import pytest

from matpair.errors import (
    NotAMemberError,
    OffVarietyError,
    SchemaError,
    SizeMismatchError,
    VanishingCoordinateError,
)
from matpair.membership import conjugate, is_member
from matpair.models import MatrixPair, Tolerances
from matpair.sampling import random_conjugator, sample
from cm2 import (
    PHI,
    PSI,
    CM2Coords,
    cm2_constraint,
    cm2_flows,
    cm2_generators,
    cm2_orbit,
    cm2_to_pair,
    cm2_transpose_swap,
    compatibility_grid,
    eliminate_x12,
    float_grid,
    gaussian,
    generators_from_pair,
    h_roots,
    on_variety,
    orbit_generator_spread,
    pair_to_cm2,
    same_orbit,
    to_exact,
    to_float,
    triangularize_y,
    verify_compatible_pair,
    z2_action_1,
    z2_action_2,
)
from cm2.coords import rational_to_json

LOOSE = Tolerances(orbit_tol=1e-6)


@pytest.fixture
def point():
    """A float point with exact arithmetic on the constraint: 4 - 3 - 1 = 0."""
    return CM2Coords(lam=0.3 + 0.2j, eps=1.5 + 0j, x11=0.7 + 0j, x21=2.0 + 0j, delta=-1.0 + 0j)


def coords(lam, eps, x11, x21, delta):
    return CM2Coords(*(gaussian(v) for v in (lam, eps, x11, x21, delta)))


class TestConstraint:
    """Test the defining equation of the model."""

    def test_values(self):
        assert cm2_constraint(CM2Coords(0j, 0j, 0j, 1 + 0j, 0j)) == 0
        assert cm2_constraint(CM2Coords(0j, 0j, 0j, 2 + 0j, 0j)) == 3

    def test_golden_ratio_point(self):
        x21 = (-1 + np.sqrt(5)) / 2
        c = CM2Coords(0j, 1 + 0j, 0j, complex(x21), 1 + 0j)
        assert abs(cm2_constraint(c)) < 1e-15
        assert on_variety(c)

    def test_exact_zero(self):
        assert on_variety(coords(0, 0, 0, 1, 5))
        assert not on_variety(coords(0, 0, 0, 2, 0))

    def test_representative_pair(self):
        p = cm2_to_pair(CM2Coords(0j, 0j, 0j, 1 + 0j, 0j))
        np.testing.assert_array_equal(p.X, [[0, 0], [1, 0]])
        np.testing.assert_array_equal(p.Y, [[0, 1], [0, 0]])

    def test_representative_is_member(self, point):
        assert is_member(cm2_to_pair(point))

    def test_off_variety_rejected(self):
        with pytest.raises(OffVarietyError, match="off-variety"):
            cm2_to_pair(CM2Coords(0j, 0j, 0j, 2 + 0j, 0j))


class TestZ2Actions:
    """Test the two commuting involutions."""

    def test_first_action(self):
        assert z2_action_1(coords(0, 0, 1, 1, 2)) == coords(0, 0, 3, 1, -2)

    @pytest.mark.parametrize("x21", [1, -1])
    def test_second_action(self, x21):
        assert z2_action_2(coords(1, 2, 0, x21, 0)) == coords(3, -2, 0, x21, 0)

    def test_involutions(self):
        for c in compatibility_grid(3):
            assert z2_action_1(z2_action_1(c)) == c
            assert z2_action_2(z2_action_2(c)) == c
            assert z2_action_1(z2_action_2(c)) == z2_action_2(z2_action_1(c))

    def test_actions_keep_constraint(self):
        for c in compatibility_grid(3):
            assert on_variety(z2_action_1(c))
            assert on_variety(z2_action_2(c))

    def test_zero_delta_is_fixed_by_first_action(self):
        c = coords(1, 2, 0, 1, 0)
        assert z2_action_1(c) == c
        assert len(cm2_orbit(c)) == 2

    def test_generic_orbit_has_four_points(self, point):
        assert len(cm2_orbit(point)) == 4


class TestGenerators:
    """Test the five ring generators."""

    def test_delta_squared(self):
        assert cm2_generators(coords(0, 0, 1, 1, 2)).d2 == gaussian(4)

    def test_w(self):
        assert cm2_generators(coords(0, 0, 0, 1, 0)).w == gaussian(2)

    def test_from_pair_matches_coordinates(self, point):
        expected = cm2_generators(point).values()
        actual = generators_from_pair(cm2_to_pair(point)).values()
        np.testing.assert_allclose(actual, expected, atol=1e-12)

    def test_conjugation_invariant(self, rng, point):
        p = cm2_to_pair(point)
        q = conjugate(p, random_conjugator(2, rng))
        np.testing.assert_allclose(generators_from_pair(q).values(), generators_from_pair(p).values(), atol=1e-7)

    def test_constant_on_orbit(self, point):
        spread = orbit_generator_spread(point)
        assert set(spread) == {'d2', 'e2', 'tr_y', 'tr_x', 'w'}
        assert spread['tr_x'] < 1e-12
        assert spread['tr_y'] < 1e-12
        assert max(spread.values()) < 1e-12

    def test_exact_orbit_spread_is_zero(self):
        c = to_exact(CM2Coords(1 + 0j, 2 + 0j, 0.5 + 0j, 1 + 0j, 0j))
        assert all(v == 0 for v in orbit_generator_spread(c).values())

    def test_vanishing_x21(self):
        with pytest.raises(VanishingCoordinateError):
            cm2_generators(coords(0, 1, 0, 0, 0))


class TestCanonicalForm:
    """Test the map from n = 2 pairs to coordinates."""

    def test_round_trip(self, point):
        assert same_orbit(point, pair_to_cm2(cm2_to_pair(point)), LOOSE)

    def test_conjugation_does_not_change_orbit(self, rng, point):
        p = cm2_to_pair(point)
        for _ in range(10):
            q = conjugate(p, random_conjugator(2, rng))
            assert same_orbit(point, pair_to_cm2(q), LOOSE)

    def test_grid_points(self, rng):
        for c in float_grid(10, seed=4):
            q = conjugate(cm2_to_pair(c), random_conjugator(2, rng))
            assert same_orbit(c, pair_to_cm2(q), LOOSE)

    def test_sampled_pairs_land_on_variety(self):
        for p in sample(2, 10, seed=8):
            assert on_variety(pair_to_cm2(p), LOOSE)

    def test_two_roots_are_exchanged_by_first_action(self, rng, point):
        q = conjugate(cm2_to_pair(point), random_conjugator(2, rng))
        X_t, Y_t = triangularize_y(q)
        h1, h2 = h_roots(X_t)
        assert h1 + h2 == pytest.approx(X_t[1, 1] - X_t[0, 0])
        first, second = eliminate_x12(X_t, Y_t, h1), eliminate_x12(X_t, Y_t, h2)
        assert same_orbit(first, second, LOOSE)
        assert max(abs(a - b) for a, b in zip(z2_action_1(first).components, second.components)) < 1e-6

    def test_wrong_size(self):
        with pytest.raises(SizeMismatchError):
            pair_to_cm2(sample(3, 1, seed=0)[0])

    def test_not_member(self):
        with pytest.raises(NotAMemberError):
            pair_to_cm2(MatrixPair(X=np.eye(2), Y=np.eye(2)))


class TestFlows:
    """Test the two translation flows and the transpose swap."""

    def test_flows_shift_one_coordinate(self, point):
        assert cm2_flows(point, PHI, 2).x11 == point.x11 + 2
        assert cm2_flows(point, PSI, 2).lam == point.lam + 2
        assert cm2_flows(point, PSI, 2).x11 == point.x11

    def test_flows_commute(self):
        for c in compatibility_grid(2):
            t, s = gaussian(1, 2), gaussian(Fraction(-1, 3))
            assert cm2_flows(cm2_flows(c, PHI, t), PSI, s) == cm2_flows(cm2_flows(c, PSI, s), PHI, t)

    def test_phi_matches_shift_of_x(self, point):
        moved = cm2_to_pair(cm2_flows(point, PHI, 1.5))
        np.testing.assert_allclose(moved.X, cm2_to_pair(point).X + 1.5 * np.eye(2))

    def test_unknown_flow(self, point):
        with pytest.raises(SchemaError, match="unknown flow"):
            cm2_flows(point, 'chi', 1)

    def test_transpose_swap(self, point):
        p = cm2_to_pair(point)
        swapped = MatrixPair(X=p.Y.T, Y=p.X.T)
        D = np.diag([1, point.x21])
        assert conjugate(swapped, D).allclose(cm2_to_pair(cm2_transpose_swap(point)), atol=1e-12)

    def test_transpose_swap_is_involution(self, point):
        assert cm2_transpose_swap(cm2_transpose_swap(point)) == point


class TestCoordsJson:
    """Test JSON forms of coordinates."""

    def test_rational_encoding(self):
        assert rational_to_json(gaussian(Fraction(1, 2), Fraction(-1, 3))) == {'num': [3, -2], 'den': 6}

    def test_exact_round_trip(self):
        c = compatibility_grid(2)[3]
        assert CM2Coords.from_dict(c.to_dict()) == c

    def test_float_form(self, point):
        data = point.to_dict()
        assert 'exact' not in data
        assert data['lambda'] == [0.3, 0.2]

    def test_backend_conversion(self):
        c = compatibility_grid(2)[5]
        f = to_float(c)
        assert f.backend == 'float' and c.backend == 'exact'
        assert to_exact(f) == c

    def test_missing_field(self):
        with pytest.raises(SchemaError, match="missing field"):
            CM2Coords.from_dict({'lambda': [0, 0]})


class TestCertificate:
    """Test the compatible-pair certificate."""

    def test_exact_small_grid(self):
        certificate = verify_compatible_pair(exact=True, size=2)
        assert certificate.passed
        assert certificate.points == 8
        assert certificate.backend == 'exact'
        assert certificate.clause('ideal_product').checks > 0

    def test_float_grid(self):
        certificate = verify_compatible_pair(exact=False, seed=1, count=20)
        assert certificate.passed
        assert certificate.points == 20
        assert all(c.max_residual < 1e-8 for c in certificate.clauses)

    def test_clause_names(self):
        certificate = verify_compatible_pair(exact=True, size=2)
        names = [c.name for c in certificate.clauses]
        assert names == ['theta2_kills_a', 'a_degree_one', 'kernel_memberships', 'ideal_product']
        assert certificate.clause('flows_commute').passed
        with pytest.raises(KeyError):
            certificate.clause('missing')

    def test_grid_is_on_variety(self):
        grid = compatibility_grid(5)
        assert len(grid) == 125
        assert all(on_variety(c) for c in grid)
        assert all(c.exact for c in grid)

    def test_grid_size_limits(self):
        with pytest.raises(ValueError):
            compatibility_grid(6)

    def test_to_dict(self):
        data = verify_compatible_pair(exact=True, size=2).to_dict()
        assert data['passed'] is True
        assert [d['name'] for d in data['descent']] == [
            'flows_commute_with_z2', 'flows_commute', 'constraint_preserved', 'z2_involutions',
        ]


@pytest.mark.slow
def test_exact_certificate_full_grid():
    certificate = verify_compatible_pair(exact=True, size=5)
    assert certificate.passed
    assert certificate.points == 125


@pytest.mark.slow
def test_canonical_orbit_stable_under_thousand_conjugations(rng):
    for p in sample(2, 1000, seed=60):
        c = pair_to_cm2(p)
        assert same_orbit(c, pair_to_cm2(cm2_to_pair(c)))
        assert same_orbit(c, pair_to_cm2(conjugate(p, random_conjugator(2, rng))))
