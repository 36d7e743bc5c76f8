"""Tests for h(lambda), its decomposition and the oracle preservation checks."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centric_kit.core.exceptions import AnalysisError, OracleBudgetError
from centric_kit.core.types import ClusteringResult, Dataset, Partition, SuiteConfig, VerdictKind
from centric_kit.services.analysis import (
    _compare_optima,
    certify_quadratic,
    endpoint_scan,
    enumerate_splits,
    h_decompose,
    h_lambda,
    merge_cost_increase,
    run_random_suite,
    sample_splits,
    split_from_labels,
    verify_centric_consistency,
    verify_lambda0_collapse,
    verify_theorem3,
)
from centric_kit.services.kmeans import cost_pairwise, kmeans_ideal
from centric_kit.services.transforms import contract_points


@pytest.fixture
def constructed_split():
    """P = points 0-3 with mu(P) = 0; K_1 takes A_1 = {0, 1} plus three fixed points, K_2 the rest."""
    points = [
        [0.0, 0.0], [2.0, 0.0], [-1.0, 0.0], [-1.0, 0.0],
        [0.0, 3.0], [0.0, -3.0],
        [10.0, 0.0], [11.0, 1.0], [12.0, -1.0],
    ]
    dataset = Dataset(points=points)
    reference = Partition(labels=[0, 0, 0, 0, 0, 0, 1, 1, 1], k=2)
    alternative = [0, 0, 1, 1, 0, 1, 0, 0, 1]
    subset = [0, 1, 2, 3]
    return dataset, reference, subset, split_from_labels(reference, subset, alternative)


def test_merge_cost_increase_matches_within_ss():
    assert merge_cost_increase(1, np.array([0.0]), 1, np.array([2.0])) == pytest.approx(2.0)
    assert merge_cost_increase(0, np.array([0.0]), 3, np.array([2.0])) == 0.0


class TestSplits:
    def test_split_parts(self, constructed_split):
        _, _, _, split = constructed_split
        assert [a.tolist() for a in split.a] == [[0, 1], [2, 3]]
        assert [b.tolist() for b in split.b] == [[4], [5]]
        assert [[c.tolist() for c in row] for row in split.c] == [[[6, 7]], [[8]]]

    def test_subset_spanning_clusters(self, line_partition):
        with pytest.raises(AnalysisError, match="inside one reference cluster"):
            split_from_labels(line_partition, [1, 2], [0, 0, 1, 1])

    def test_enumeration_count(self, line_partition):
        assert len(list(enumerate_splits(line_partition, [0]))) == 7

    def test_enumeration_limit(self):
        reference = Partition(labels=np.arange(11) % 2, k=2)
        with pytest.raises(AnalysisError, match="too large"):
            next(enumerate_splits(reference, [0]))

    def test_sampled_splits_use_every_cluster(self, two_blobs_12):
        _, labels = two_blobs_12
        for split in sample_splits(labels, labels.members(0)[:2], count=20, seed=1):
            assert split.k == 2
            assert np.all(split.to_labels(12) >= 0)


class TestHLambda:
    def test_reference_against_itself_is_zero(self, two_blobs_12):
        dataset, labels = two_blobs_12
        subset = labels.members(0)[:3]
        split = split_from_labels(labels, subset, labels.labels)
        assert h_lambda(dataset, labels, split, subset, 1.0) == pytest.approx(0.0, abs=1e-12)
        assert h_lambda(dataset, labels, split, subset, 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_matches_pairwise_reimplementation(self):
        rng = np.random.default_rng(8)
        dataset = Dataset(points=rng.normal(size=(10, 2)))
        reference = Partition(labels=[0, 0, 0, 0, 0, 1, 1, 1, 1, 1], k=2)
        subset = [1, 2, 4]
        alternative = np.array([0, 1, 0, 1, 1, 0, 0, 1, 1, 0])
        split = split_from_labels(reference, subset, alternative)

        moved = Dataset(points=contract_points(dataset.points, np.array(subset), 0.4))
        expected = cost_pairwise(moved, reference) - cost_pairwise(moved, Partition(labels=alternative, k=2))
        assert h_lambda(dataset, reference, split, subset, 0.4) == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_lambda_outside_unit_interval(self, constructed_split):
        dataset, reference, subset, split = constructed_split
        with pytest.raises(AnalysisError):
            h_lambda(dataset, reference, split, subset, 1.5)


class TestDecomposition:
    def test_quadratic_coefficient_by_hand(self, constructed_split):
        dataset, reference, subset, split = constructed_split
        analysis = h_decompose(dataset, reference, split, subset)
        # (2 - 2*3/5) * 1 for K_1, (2 - 2*2/4) * 1 for K_2
        assert analysis.quad_coeff == pytest.approx(1.8)
        assert analysis.strictly_convex
        assert np.allclose(analysis.v_a[0], [1.0, 0.0])

    def test_whole_p_in_one_cluster_has_no_curvature(self, constructed_split):
        dataset, reference, subset, _ = constructed_split
        split = split_from_labels(reference, subset, [0, 0, 0, 0, 1, 1, 0, 1, 1])
        analysis = h_decompose(dataset, reference, split, subset)
        assert analysis.quad_coeff == pytest.approx(0.0, abs=1e-12)
        assert not analysis.strictly_convex

    def test_closed_form_reproduces_h(self, constructed_split):
        dataset, reference, subset, split = constructed_split
        analysis = h_decompose(dataset, reference, split, subset)
        for lam in (0.0, 0.3, 0.5, 1.0):
            assert analysis.h_at(lam) == pytest.approx(h_lambda(dataset, reference, split, subset, lam), rel=1e-9, abs=1e-9)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(2, 3))
    def test_fit_agrees_with_closed_form(self, seed, dim, k):
        rng = np.random.default_rng(seed)
        n = 9
        dataset = Dataset(points=rng.normal(size=(n, dim)) * 3)
        reference = Partition(labels=np.arange(n) % k, k=k)
        subset = reference.members(0)[: 2 + seed % 2]
        alternative = rng.integers(0, k, size=n)
        alternative[:k] = np.arange(k)
        split = split_from_labels(reference, subset, alternative)

        certificate = certify_quadratic(dataset, reference, split, subset)
        assert certificate.quad_rel_error <= 1e-8
        assert certificate.probe_rel_error <= 1e-8
        assert np.allclose(certificate.fit_coeffs, certificate.closed_form_coeffs, rtol=1e-7, atol=1e-7)


class TestVerifyTheorem3:
    def test_lambda_one_preserves(self, two_blobs_12):
        dataset, labels = two_blobs_12
        verdict = verify_theorem3(dataset, 2, labels.members(0)[:3], 1.0)
        assert verdict.verdict is VerdictKind.PRESERVED
        assert verdict.pre_cost == pytest.approx(verdict.post_cost)

    def test_four_points_of_one_blob(self, two_blobs_12):
        dataset, labels = two_blobs_12
        verdict = verify_theorem3(dataset, 2, labels.members(1)[:4], 0.5)
        assert verdict.verdict is VerdictKind.PRESERVED
        assert verdict.subset_size == 4

    @pytest.mark.parametrize("lam", [0.25, 0.75])
    def test_three_blobs(self, three_blobs_12, lam):
        dataset, labels = three_blobs_12
        subset = np.random.default_rng(int(lam * 100)).choice(labels.members(2), size=3, replace=False)
        assert verify_theorem3(dataset, 3, subset, lam).verdict is VerdictKind.PRESERVED

    def test_subset_spanning_ideal_clusters(self, two_blobs_12):
        dataset, labels = two_blobs_12
        with pytest.raises(AnalysisError, match="spans several clusters"):
            verify_theorem3(dataset, 2, [labels.members(0)[0], labels.members(1)[0]], 0.5)

    def test_budget(self, two_blobs_12):
        dataset, labels = two_blobs_12
        with pytest.raises(OracleBudgetError):
            verify_theorem3(dataset, 2, labels.members(0)[:2], 0.5, budget=100)

    def test_centric_consistency(self, three_blobs_12):
        dataset, _ = three_blobs_12
        for cluster in range(3):
            assert verify_centric_consistency(dataset, 3, cluster, 0.5).verdict is VerdictKind.PRESERVED


class TestCompareOptima:
    @staticmethod
    def result(labels, gap=1.0):
        return ClusteringResult(partition=Partition(labels=labels, k=2), cost=1.0, gap=gap, method="ideal")

    def test_renumbered_clusters_count_as_preserved(self):
        verdict = _compare_optima(self.result([0, 0, 1, 1]), self.result([1, 1, 0, 0]), "gamma_plus_plus", 0.5, 2)
        assert verdict.verdict is VerdictKind.PRESERVED

    def test_moved_point_is_a_violation(self):
        verdict = _compare_optima(self.result([0, 0, 1, 1]), self.result([0, 1, 1, 1]), "gamma_plus_plus", 0.5, 2)
        assert verdict.verdict is VerdictKind.VIOLATED

    def test_near_tie_is_skipped(self):
        verdict = _compare_optima(self.result([0, 0, 1, 1], gap=0.0), self.result([0, 1, 1, 1]), "gamma_star", 0.5, 2)
        assert verdict.verdict is VerdictKind.TIE_SKIPPED


class TestLambdaZero:
    def test_reference_split_collapses_to_zero(self, two_blobs_12):
        dataset, labels = two_blobs_12
        subset = labels.members(0)[:3]
        verdict = verify_lambda0_collapse(dataset, labels, split_from_labels(labels, subset, labels.labels), subset)
        assert verdict.passed
        assert verdict.h0 == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_endpoints_never_favour_an_alternative(self, seed):
        rng = np.random.default_rng(seed)
        dataset = Dataset(points=rng.random((8, 2)))
        reference = kmeans_ideal(dataset, 2).partition
        members = reference.members(int(np.argmax(reference.sizes())))
        subset = members[:2]

        scan = endpoint_scan(dataset, reference, subset)
        assert scan.splits == 127
        assert scan.max_h0 <= 1e-9
        assert scan.max_h1 <= 1e-9
        for split in enumerate_splits(reference, subset):
            assert verify_lambda0_collapse(dataset, reference, split, subset).passed


class TestRandomSuite:
    def test_small_suite_has_no_violations(self):
        summary = run_random_suite(SuiteConfig(instances=10, n=8, ks=[2, 3], seed=1))
        assert summary.violated == 0
        assert summary.preserved + summary.tie_skipped == 10
        assert [v.instance for v in summary.verdicts] == list(range(10))

    def test_lambda_one_preserves_everything(self):
        summary = run_random_suite(SuiteConfig(instances=8, n=8, lambdas=[1.0], seed=2))
        assert summary.preserved == 8

    def test_both_checks(self):
        summary = run_random_suite(SuiteConfig(instances=4, n=7, check="both", seed=4))
        assert len(summary.verdicts) == 8
        assert {v.check for v in summary.verdicts} == {"gamma_plus_plus", "gamma_star"}

    def test_independent_of_worker_count(self):
        suite = SuiteConfig(instances=6, n=8, seed=5)
        assert run_random_suite(suite, workers=1) == run_random_suite(suite, workers=3)

    @pytest.mark.slow
    def test_acceptance_suite(self):
        summary = run_random_suite(SuiteConfig(instances=200, n=12, ks=[2], lambdas=[0.5], seed=3))
        assert summary.violated == 0


@pytest.mark.slow
@pytest.mark.parametrize("check", ["gamma_plus_plus", "gamma_star"])
def test_acceptance_suites_over_two_and_three_clusters(check):
    suite = SuiteConfig(instances=200, n=12, ks=[2, 3], dims=[2, 3], lambdas=[0.25, 0.5, 0.75], check=check, seed=17)
    summary = run_random_suite(suite)
    assert summary.violated == 0
    assert summary.preserved > 0


@pytest.mark.slow
def test_quadratic_certificates_over_many_splits():
    rng = np.random.default_rng(99)
    for instance in range(100):
        n, k = 12, int(rng.integers(2, 4))
        dataset = Dataset(points=rng.random((n, int(rng.integers(2, 4)))))
        reference = Partition(labels=np.arange(n) % k, k=k)
        members = reference.members(0)
        subset = rng.choice(members, size=int(rng.integers(2, len(members) + 1)), replace=False)
        for split in sample_splits(reference, subset, count=5, seed=instance):
            certificate = certify_quadratic(dataset, reference, split, subset)
            assert certificate.probe_rel_error <= 1e-8
            assert certificate.quad_rel_error <= 1e-8
            assert certificate.closed_form_coeffs[0] >= -1e-12


@pytest.mark.slow
def test_endpoint_dominance_over_many_instances():
    rng = np.random.default_rng(123)
    for _ in range(50):
        n = int(rng.integers(6, 11))
        dataset = Dataset(points=rng.random((n, 2)))
        reference = kmeans_ideal(dataset, 2).partition
        members = reference.members(int(np.argmax(reference.sizes())))
        subset = members[: max(1, len(members) // 2)]

        scan = endpoint_scan(dataset, reference, subset)
        assert scan.max_h0 <= 1e-9
        assert scan.max_h1 <= 1e-9
        for split in enumerate_splits(reference, subset):
            assert verify_lambda0_collapse(dataset, reference, split, subset).passed
