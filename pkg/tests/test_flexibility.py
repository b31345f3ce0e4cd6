"""
Unit tests for the tangent-span and one-vector generating checks.
"""
import numpy as np
import pytest

from matpair.errors import NotAMemberError
from matpair.membership import from_wilson_chart, is_member
from matpair.models import MatrixPair, WilsonChartPoint
from matpair.sampling import sample, sample_chart_points
from flexibility import (
    FlexibilitySummary,
    TangentialMaps,
    chart_jacobian,
    defect_drift,
    fk_gk_maps,
    flexibility_check,
    flow_tangents,
    generator_block,
    holomorphic_derivative,
    numeric_rank,
    orbit_tangents,
    semi_homogeneity_check,
    span_report,
    summary_frame,
)


@pytest.fixture
def wilson_pair():
    return from_wilson_chart(WilsonChartPoint(lambdas=[0, 1], alphas=[0, 0]))


class TestNumericRank:
    """Test rank decisions on stacked vectors."""

    def test_dependent_vectors(self):
        decision = numeric_rank([np.array([1, 0, 0]), np.array([0, 1, 0]), np.array([1, 1, 0])])
        assert decision.rank == 2
        assert decision.reliable
        assert len(decision.singular_values) == 3

    def test_full_rank_has_infinite_gap(self):
        decision = numeric_rank([np.array([1, 0]), np.array([0, 1j])])
        assert decision.rank == 2
        assert decision.gap == float('inf')

    def test_zero_vectors(self):
        assert numeric_rank([np.zeros(4), np.zeros(4)]).rank == 0

    def test_scaling_does_not_matter(self):
        assert numeric_rank([np.array([1e-8, 0]), np.array([0, 1e8])]).rank == 2


class TestTangents:
    """Test the flow fields and the conjugation orbit."""

    def test_flow_tangent_layout(self, wilson_pair):
        vectors = flow_tangents(wilson_pair)
        assert len(vectors) == 4
        np.testing.assert_array_equal(vectors[0], [0, 0, 0, 0, 0, 0, 0, 1])
        np.testing.assert_array_equal(vectors[2], [0, -1, 1, 0, 0, 0, 0, 0])

    def test_one_by_one_orbit_is_zero(self):
        p = sample(1, 1, seed=0)[0]
        assert all(not np.any(v) for v in orbit_tangents(p))

    def test_orbit_rank_drops_by_one(self, wilson_pair):
        # scalars act trivially
        assert numeric_rank(orbit_tangents(wilson_pair)).rank == 3

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_span_at_sampled_points(self, n):
        for p in sample(n, 3, seed=n):
            report = span_report(p)
            assert report.orbit_rank == n * n - 1
            assert report.quotient_span == 2 * n
            assert report.passed

    def test_report_to_dict(self, wilson_pair):
        data = span_report(wilson_pair).to_dict()
        assert data['quotient_span'] == 4
        assert data['passed'] is True


class TestDefectDrift:
    """Test first-order drift of the rank-one condition."""

    def test_flow_direction_keeps_defect(self, wilson_pair):
        direction = flow_tangents(wilson_pair)[0]
        assert defect_drift(wilson_pair, direction) < 1e-12

    def test_generic_direction_moves_defect(self, rng, wilson_pair):
        direction = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        assert defect_drift(wilson_pair, direction) > 1e-9


class TestFlexibilityCheck:
    """Test the batch check over seeded samples."""

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_all_samples_pass(self, n):
        reports, summary = flexibility_check(n, samples=5, seed=0)
        assert len(reports) == 5
        assert summary.all_passed

    def test_thread_pool_keeps_order(self):
        serial, _ = flexibility_check(2, samples=4, seed=9, threads=1)
        pooled, _ = flexibility_check(2, samples=4, seed=9, threads=3)
        for a, b in zip(serial, pooled):
            assert np.array_equal(a.point.X, b.point.X)
            assert a.quotient_span == b.quotient_span

    def test_summary_frame(self):
        reports, _ = flexibility_check(2, samples=3, seed=1)
        frame = summary_frame(reports)
        assert list(frame.columns) == ['sample', 'n', 'orbit_rank', 'combined_rank',
                                       'quotient_span', 'passed', 'gap', 'reliable']
        assert frame['passed'].all()
        assert list(frame['sample']) == [0, 1, 2]

    def test_summary_to_dict(self):
        summary = FlexibilitySummary(n=2, samples=4, passes=3, flagged_unreliable=1)
        assert not summary.all_passed
        assert summary.to_dict() == {'n': 2, 'samples': 4, 'passes': 3, 'flagged_unreliable': 1}


class TestTangentialMaps:
    """Test F_k and G_k."""

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_base_point_is_fixed(self, k):
        base = sample(3, 1, seed=12)[0]
        F, G = fk_gk_maps(base, k, base)
        assert F.allclose(base, atol=0)
        assert G.allclose(base, atol=0)

    def test_non_member_rejected(self):
        base = sample(2, 1, seed=12)[0]
        with pytest.raises(NotAMemberError):
            fk_gk_maps(MatrixPair(X=np.eye(2), Y=np.eye(2)), 1, base)
        with pytest.raises(NotAMemberError):
            fk_gk_maps(base, 1, MatrixPair(X=np.eye(2), Y=np.eye(2)))

    def test_maps_keep_membership(self):
        base, p = sample(3, 2, seed=13)
        maps = TangentialMaps(base)
        for k in range(3):
            assert is_member(maps.F(p, k))
            assert is_member(maps.G(p, k))

    def test_contour_derivative_of_cubic(self):
        d = holomorphic_derivative(lambda z: z ** 3, np.array([2.0]), np.array([1.0]), h=0.01)
        np.testing.assert_allclose(d, [12.0], atol=1e-10)

    def test_identity_jacobian(self):
        base = sample_chart_points(2, 1, seed=6)[0]
        J = chart_jacobian(lambda p: p, base)
        np.testing.assert_allclose(J, np.eye(4), atol=1e-6)

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_generator_block(self, k):
        base = sample_chart_points(3, 1, seed=5)[0]
        block = generator_block(base, k)
        powers = np.asarray(base.lambdas) ** k
        scale = max(1.0, np.abs(powers).max())
        np.testing.assert_allclose(np.diag(block), powers, atol=1e-6 * scale)
        np.testing.assert_allclose(block, np.outer(powers, np.ones(3)), atol=1e-6 * scale)


class TestSemiHomogeneity:
    """Test the one-vector generating check."""

    @pytest.mark.parametrize("n", [1, 2])
    def test_random_vector_generates(self, n):
        report = semi_homogeneity_check(n, seed=0)
        assert report.passed
        assert report.rank == 2 * n

    def test_negative_control_fails(self):
        report = semi_homogeneity_check(2, seed=0, negative_control=True)
        assert not report.passed
        assert report.rank < 4
        assert report.to_dict()['negative_control'] is True

    def test_deterministic(self):
        first = semi_homogeneity_check(2, seed=3)
        second = semi_homogeneity_check(2, seed=3)
        assert np.array_equal(first.w, second.w)
        assert first.rank == second.rank

    def test_wrong_vector_size(self):
        with pytest.raises(ValueError, match="2n=4"):
            semi_homogeneity_check(2, seed=0, w=np.ones(3))


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_flexibility_hundred_samples(n):
    _, summary = flexibility_check(n, samples=100, seed=0)
    assert summary.passes >= 99


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_semi_homogeneity_ten_base_points(n):
    for seed in range(10):
        assert semi_homogeneity_check(n, seed=seed).passed, seed
        if n >= 2:
            assert not semi_homogeneity_check(n, seed=seed, negative_control=True).passed, seed


@pytest.mark.slow
@pytest.mark.parametrize("n, k", [(n, k) for n in range(1, 5) for k in range(n + 1)])
def test_generator_block_all_powers(n, k):
    base = sample_chart_points(n, 1, seed=40 + n)[0]
    block = generator_block(base, k)
    powers = np.asarray(base.lambdas) ** k
    scale = max(1.0, np.abs(powers).max())
    np.testing.assert_allclose(np.diag(block), powers, atol=1e-6 * scale)
