"""Tests for the centric transforms, the angular transform and the Gamma checker."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centric_kit.core.exceptions import EmptySubsetError, PartitionError, TransformError
from centric_kit.core.types import (
    Dataset,
    DistanceMatrix,
    Partition,
    SubsetMode,
    SubsetSampler,
    TransformKind,
    TransformSpec,
)
from centric_kit.services.transforms import (
    angular_points,
    angular_transform,
    apply_pipeline,
    apply_transform,
    centric_set_transform,
    check_gamma_on_points,
    distance_matrix,
    gamma_plus_plus,
    gamma_star,
    is_kleinberg_gamma_transform,
)


class TestCentricSetTransform:
    def test_lambda_one_is_identity(self):
        dataset = Dataset(points=np.random.default_rng(0).normal(size=(10, 3)))
        moved = centric_set_transform(dataset, [1, 4, 7], 1.0)
        assert moved.points.tobytes() == dataset.points.tobytes()

    def test_half_contraction_on_a_line(self):
        moved = centric_set_transform(Dataset(points=[0.0, 4.0, 9.0]), [0, 1], 0.5)
        assert moved.points[:, 0].tolist() == [1.0, 3.0, 9.0]

    @pytest.mark.parametrize("lam", [0.0, -0.5, 1.01])
    def test_lambda_out_of_range(self, lam):
        with pytest.raises(TransformError, match="lambda"):
            centric_set_transform(Dataset(points=[0.0, 1.0]), [0, 1], lam)

    def test_empty_subset(self):
        with pytest.raises(EmptySubsetError):
            centric_set_transform(Dataset(points=[0.0, 1.0]), [], 0.5)

    @settings(max_examples=200)
    @given(
        st.integers(0, 2**32 - 1),
        st.integers(1, 12),
        st.floats(1e-3, 1.0),
        st.floats(1e-3, 1.0),
    )
    def test_centroid_kept_and_composition_multiplies(self, seed, size, lam1, lam2):
        rng = np.random.default_rng(seed)
        dataset = Dataset(points=rng.normal(size=(15, 2)) * 5)
        subset = rng.choice(15, size=size, replace=False)
        once = centric_set_transform(dataset, subset, lam1)
        twice = centric_set_transform(once, subset, lam2)
        direct = centric_set_transform(dataset, subset, lam1 * lam2)

        assert np.allclose(once.points[subset].mean(axis=0), dataset.points[subset].mean(axis=0), rtol=0, atol=1e-12 * 50)
        assert np.allclose(twice.points, direct.points, rtol=0, atol=1e-12 * 50)
        outside = np.setdiff1d(np.arange(15), subset)
        assert np.array_equal(once.points[outside], dataset.points[outside])


class TestGammaStar:
    def test_contracts_cluster_toward_its_centroid(self):
        dataset = Dataset(points=[0.0, 2.0, 4.0, 50.0])
        moved = gamma_star(dataset, Partition(labels=[0, 0, 0, 1], k=2), 0, 0.5)
        assert moved.points[:, 0].tolist() == [1.0, 2.0, 3.0, 50.0]

    def test_lambda_one_is_identity(self, two_blobs_12):
        dataset, labels = two_blobs_12
        assert np.array_equal(gamma_star(dataset, labels, 1, 1.0).points, dataset.points)

    def test_invalid_cluster(self, line_dataset, line_partition):
        with pytest.raises(TransformError):
            gamma_star(line_dataset, line_partition, 2, 0.5)

    def test_invalid_partition(self, line_dataset):
        with pytest.raises(PartitionError):
            gamma_star(line_dataset, Partition(labels=[0, 0, 0, 0], k=2), 0, 0.5)


class TestGammaPlusPlus:
    def test_whole_cluster_matches_gamma_star_bit_for_bit(self, two_blobs_12):
        dataset, labels = two_blobs_12
        outcome = gamma_plus_plus(dataset, labels, 0, labels.members(0), 0.3)
        assert outcome.dataset.points.tobytes() == gamma_star(dataset, labels, 0, 0.3).points.tobytes()
        assert outcome.expected_partition is labels

    def test_subset_must_lie_in_the_cluster(self, line_dataset, line_partition):
        with pytest.raises(TransformError, match="Γ⁺⁺ subset must lie within one cluster"):
            gamma_plus_plus(line_dataset, line_partition, 0, [1, 2], 0.5)

    def test_is_not_a_gamma_transformation(self, mixed_direction_instance):
        dataset, partition, subset = mixed_direction_instance
        moved = gamma_plus_plus(dataset, partition, 1, subset, 0.5).dataset
        assert moved.points[:, 0].tolist() == [-20.0, 1.0, 3.0, 5.0]

        check = is_kleinberg_gamma_transform(distance_matrix(dataset), distance_matrix(moved), partition)
        kinds = {v["kind"] for v in check.violations}
        assert not check.valid
        assert kinds == {"within_increased", "between_decreased"}
        assert {"i": 2, "j": 3, "kind": "within_increased", "before": 1.0, "after": 2.0} in check.violations
        assert {"i": 0, "j": 2, "kind": "between_decreased", "before": 24.0, "after": 23.0} in check.violations


class TestDistances:
    def test_two_points(self):
        assert distance_matrix(Dataset(points=[0.0, 3.0])).values[0, 1] == 3.0

    def test_square_diagonals(self):
        d = distance_matrix(Dataset(points=[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])).values
        assert d[0, 2] == pytest.approx(np.sqrt(2.0))
        assert d[1, 3] == pytest.approx(np.sqrt(2.0))
        assert np.array_equal(d, d.T)
        assert np.all(np.diag(d) == 0.0)


class TestKleinbergChecker:
    def setup_method(self):
        self.partition = Partition(labels=[0, 0, 1], k=2)
        self.d = DistanceMatrix(values=[[0.0, 1.0, 5.0], [1.0, 0.0, 4.0], [5.0, 4.0, 0.0]])

    def test_identity_is_valid(self):
        assert is_kleinberg_gamma_transform(self.d, self.d, self.partition).valid

    def test_shrinking_within_distance_is_valid(self):
        shrunk = DistanceMatrix(values=[[0.0, 0.5, 5.0], [0.5, 0.0, 4.0], [5.0, 4.0, 0.0]])
        assert is_kleinberg_gamma_transform(self.d, shrunk, self.partition).valid

    def test_shrinking_cross_distance_is_invalid(self):
        shrunk = DistanceMatrix(values=[[0.0, 1.0, 3.0], [1.0, 0.0, 4.0], [3.0, 4.0, 0.0]])
        check = is_kleinberg_gamma_transform(self.d, shrunk, self.partition)
        assert not check.valid
        assert check.violation_count == 1
        assert (check.violations[0]["i"], check.violations[0]["j"]) == (0, 2)

    def test_size_mismatch(self):
        with pytest.raises(TransformError):
            is_kleinberg_gamma_transform(self.d, DistanceMatrix(values=np.zeros((2, 2))), self.partition)

    def test_point_based_check_matches_matrices(self, two_blobs_40):
        dataset, labels = two_blobs_40
        moved = Dataset(points=dataset.points + np.random.default_rng(3).normal(scale=0.1, size=dataset.points.shape))
        from_points = check_gamma_on_points(dataset, moved, labels)
        from_matrices = is_kleinberg_gamma_transform(distance_matrix(dataset), distance_matrix(moved), labels)
        assert from_points.violation_count == from_matrices.violation_count

        def pairs(check):
            return [(v["i"], v["j"], v["kind"]) for v in check.violations]

        assert pairs(from_points) == pairs(from_matrices)


class TestAngular:
    def test_doubles_angle_in_the_plane(self):
        points, clamped = angular_points(np.array([[1.0, 0.0]]), [1.0, 1.0], 2.0)
        assert clamped == 0
        assert np.allclose(points[0], [np.sqrt(2) / 2, -np.sqrt(2) / 2])

    def test_point_on_axis_is_fixed(self):
        points, _ = angular_points(np.array([[2.0, 2.0, 0.0]]), [1.0, 1.0, 0.0], 0.3)
        assert np.array_equal(points, [[2.0, 2.0, 0.0]])

    def test_factor_one_is_identity(self):
        data = np.random.default_rng(4).normal(size=(6, 3))
        points, _ = angular_points(data, [0.0, 0.0, 1.0], 1.0)
        assert np.array_equal(points, data)

    def test_norms_are_kept(self):
        data = np.random.default_rng(5).normal(size=(30, 3))
        points, _ = angular_points(data, [1.0, 2.0, 0.5], 0.4, center=[0.1, 0.0, -0.2])
        c = np.array([0.1, 0.0, -0.2])
        assert np.allclose(np.linalg.norm(points - c, axis=1), np.linalg.norm(data - c, axis=1))

    def test_two_sided_keeps_the_axial_side(self):
        points, _ = angular_points(np.array([[-1.0, 0.2]]), [1.0, 0.0], 0.5, two_sided=True)
        assert points[0, 0] < 0
        assert abs(points[0, 1]) < 0.2

    def test_large_factor_is_clamped(self):
        _, clamped = angular_points(np.array([[0.0, 1.0]]), [1.0, 0.0], 3.0)
        assert clamped == 1

    @pytest.mark.parametrize("axis", [[0.0, 0.0], [1.0, 0.0, 0.0]])
    def test_bad_axis(self, axis):
        with pytest.raises(TransformError):
            angular_transform(Dataset(points=[[1.0, 0.0]]), axis, 0.5)

    def test_squeezing_one_square_is_a_gamma_transformation(self):
        from centric_kit.services.datagen import DIAGONAL_AXIS, two_squares_3d

        dataset, labels = two_squares_3d(200, seed=1)
        moved, _ = angular_points(dataset.points, DIAGONAL_AXIS, 0.05, subset=labels.members(0), two_sided=True)
        assert check_gamma_on_points(dataset, Dataset(points=moved), labels).valid


class TestSpecDispatch:
    def test_gamma_plus_plus_with_sampler(self, two_blobs_12):
        dataset, labels = two_blobs_12
        spec = TransformSpec(
            kind=TransformKind.GAMMA_PLUS_PLUS, cluster=1, lambda_=0.5,
            sample=SubsetSampler(cluster=1, fraction=0.5, mode=SubsetMode.UNIFORM, seed=3),
        )
        outcome = apply_transform(dataset, labels, spec)
        assert outcome.metadata["subset_size"] == 3
        assert set(outcome.metadata["subset"]) <= set(labels.members(1).tolist())

    def test_sampler_cluster_must_match(self, two_blobs_12):
        dataset, labels = two_blobs_12
        spec = TransformSpec(
            kind=TransformKind.GAMMA_PLUS_PLUS, cluster=1, lambda_=0.5,
            sample=SubsetSampler(cluster=0, fraction=0.5),
        )
        with pytest.raises(TransformError, match="sampler cluster"):
            apply_transform(dataset, labels, spec)

    def test_cluster_transforms_need_labels(self, line_dataset):
        with pytest.raises(TransformError):
            apply_transform(line_dataset, None, TransformSpec(kind=TransformKind.GAMMA_STAR, cluster=0, lambda_=0.5))

    def test_pipeline_of_fragments(self, two_blobs_12):
        dataset, labels = two_blobs_12
        members = labels.members(0).tolist()
        specs = [
            TransformSpec(kind=TransformKind.CENTRIC_SET, subset=members[i:i + 2], lambda_=0.5)
            for i in range(5)
        ]
        outcome = apply_pipeline(dataset, labels, specs)
        assert len(outcome.metadata["steps"]) == 5
        others = labels.members(1)
        assert np.array_equal(outcome.dataset.points[others], dataset.points[others])
