"""Type definitions and data models for centric-kit.

This module contains the Pydantic models used throughout the package for
validation and type safety. Point matrices and label vectors are numpy arrays
that are made read-only once a model has validated them, so datasets and
partitions can be shared freely between threads.
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from centric_kit.config.config import SCHEMA_VERSION


def _frozen(array: np.ndarray) -> np.ndarray:
    """Return a private read-only copy of ``array``."""
    out = np.array(array, copy=True)
    out.setflags(write=False)
    return out


def as_index_array(indices: Sequence[int] | np.ndarray) -> np.ndarray:
    """Convert an index-set to a sorted, duplicate-free int64 array."""
    arr = np.asarray(indices, dtype=np.int64).reshape(-1)
    return np.unique(arr)


class SchemaModel(BaseModel):
    """Base for models that are written to JSON with a top-level schema version."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema", description="JSON schema version")

    @field_validator("schema_version")
    @classmethod
    def validate_schema_version(cls, v: int) -> int:
        """Only the current schema version is understood."""
        if v != SCHEMA_VERSION:
            raise ValueError(f"Unsupported schema version {v} (expected {SCHEMA_VERSION})")
        return v

    def to_json(self) -> str:
        """Serialize with JSON aliases (``schema``, ``lambda``)."""
        return self.model_dump_json(by_alias=True, indent=2)


# =============================================================================
# DATASETS AND PARTITIONS
# =============================================================================

class Dataset(BaseModel):
    """An immutable set of n points in d-dimensional Euclidean space."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    points: np.ndarray = Field(..., description="n x d matrix of float64 coordinates")

    @field_validator("points", mode="before")
    @classmethod
    def validate_points(cls, v: Any) -> np.ndarray:
        """Coerce to a finite, read-only float64 matrix; 1-D input is a column."""
        arr = np.asarray(v, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise ValueError(f"Points must form an n x d matrix, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("A dataset needs at least one point and one dimension")
        if not np.all(np.isfinite(arr)):
            raise ValueError("Point coordinates must be finite (no NaN or Inf)")
        return _frozen(arr)

    @property
    def n(self) -> int:
        """Number of points."""
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        """Dimension of the embedding."""
        return int(self.points.shape[1])

    @property
    def ids(self) -> np.ndarray:
        """Stable 0-based point indices."""
        return np.arange(self.n)

    def with_points(self, points: np.ndarray) -> "Dataset":
        """Return a new dataset with the same shape and replaced coordinates."""
        if np.shape(points) != self.points.shape:
            raise ValueError(f"Replacement points have shape {np.shape(points)}, expected {self.points.shape}")
        return Dataset(points=points)


class Partition(BaseModel):
    """Assignment of each point to one of k clusters.

    Only structural checks happen here; whether the partition fits a dataset
    (length, label range, non-empty clusters) is the job of
    ``centric_kit.core.clusters.validate_partition``.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    labels: np.ndarray = Field(..., description="Length-n vector of cluster indices")
    k: int = Field(..., ge=1, description="Number of clusters")

    @field_validator("labels", mode="before")
    @classmethod
    def validate_labels(cls, v: Any) -> np.ndarray:
        """Coerce to a read-only 1-D int64 vector."""
        arr = np.asarray(v)
        if arr.ndim != 1:
            raise ValueError(f"Labels must be a 1-D vector, got shape {arr.shape}")
        if arr.size and not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("Labels must be integers")
        return _frozen(arr.astype(np.int64))

    @classmethod
    def from_labels(cls, labels: Sequence[int] | np.ndarray, k: Optional[int] = None) -> "Partition":
        """Build a partition, inferring k as ``max(label) + 1`` when omitted."""
        arr = np.asarray(labels, dtype=np.int64)
        if k is None:
            k = int(arr.max()) + 1 if arr.size else 1
        return cls(labels=arr, k=k)

    @property
    def n(self) -> int:
        """Number of labelled points."""
        return int(self.labels.shape[0])

    def sizes(self) -> np.ndarray:
        """Cluster sizes in cluster-index order (labels assumed in range)."""
        return np.bincount(self.labels, minlength=self.k)[: self.k]

    def members(self, cluster: int) -> np.ndarray:
        """Indices of the points in ``cluster``."""
        return np.flatnonzero(self.labels == cluster)

    def canonical_labels(self) -> np.ndarray:
        """Relabel clusters by order of first appearance (0, 1, 2, ...)."""
        _, first = np.unique(self.labels, return_index=True)
        order = np.argsort(first)
        mapping = np.empty(int(self.labels.max()) + 1 if self.n else 0, dtype=np.int64)
        mapping[np.unique(self.labels)[order]] = np.arange(order.size)
        return mapping[self.labels]


class ClusterStats(BaseModel):
    """Gravity center, size and within-cluster sum of squares of one cluster."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    centroid: np.ndarray = Field(..., description="Gravity center of the cluster")
    size: int = Field(..., ge=1, description="Number of member points")
    within_ss: float = Field(..., ge=0.0, description="Sum of squared distances to the centroid")


# =============================================================================
# K-MEANS
# =============================================================================

class InitMethod(str, Enum):
    """Initialization strategies for Lloyd's algorithm."""
    UNIFORM_RANDOM_ASSIGNMENT = "uniform-random-assignment"
    KMEANS_PLUS_PLUS = "kmeans-plus-plus"


class LloydConfig(SchemaModel):
    """Configuration for multi-restart Lloyd iterations."""

    k: int = Field(..., ge=1, description="Number of clusters")
    restarts: int = Field(20, ge=1, description="Number of independent restarts")
    max_iters: int = Field(300, ge=1, description="Iteration cap per restart")
    tol: float = Field(1e-9, ge=0.0, description="Relative cost-improvement stop threshold")
    seed: int = Field(0, description="Master seed; per-restart seeds are derived from it")
    init: InitMethod = Field(InitMethod.KMEANS_PLUS_PLUS, description="Initialization strategy")


class ClusteringResult(BaseModel):
    """Outcome of Lloyd's algorithm or of the exhaustive oracle."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    partition: Partition
    cost: float = Field(..., ge=0.0, description="k-means cost Q of the partition")
    iterations: int = Field(0, ge=0, description="Iterations of the winning restart")
    converged: bool = Field(True, description="Whether the winning restart converged")
    restart_costs: List[float] = Field(default_factory=list, description="Final cost per restart")
    cost_history: List[float] = Field(default_factory=list, description="Per-iteration cost of the winning restart")
    gap: Optional[float] = Field(None, description="Oracle gap to the second-best partition")
    method: str = Field("lloyd", description="'lloyd' or 'ideal'")

    def to_json_dict(self) -> Dict[str, Any]:
        """Plain-JSON view used by the command-line tool."""
        return {
            "schema": SCHEMA_VERSION,
            "method": self.method,
            "k": self.partition.k,
            "cost": self.cost,
            "iterations": self.iterations,
            "converged": self.converged,
            "restart_costs": list(self.restart_costs),
            "gap": self.gap,
            "labels": self.partition.labels.tolist(),
        }


# =============================================================================
# TRANSFORMS
# =============================================================================

class TransformKind(str, Enum):
    """Supported dataset transforms."""
    GAMMA_STAR = "gamma_star"
    GAMMA_PLUS_PLUS = "gamma_plus_plus"
    CENTRIC_SET = "centric_set"
    ANGULAR = "angular"


CENTRIC_KINDS = (TransformKind.GAMMA_STAR, TransformKind.GAMMA_PLUS_PLUS, TransformKind.CENTRIC_SET)


class SubsetMode(str, Enum):
    """How a fragment of a cluster is chosen."""
    UNIFORM = "uniform"
    BALL = "ball"


class SubsetSampler(BaseModel):
    """Recipe for drawing a transform subset from one cluster."""

    cluster: int = Field(..., ge=0, description="Cluster to sample from")
    fraction: float = Field(..., gt=0.0, le=1.0, description="Share of the cluster to take")
    mode: SubsetMode = Field(SubsetMode.UNIFORM, description="Sampling mode")
    seed: int = Field(0, description="Sampling seed")
    anchor: Optional[int] = Field(None, ge=0, description="Fixed seed point for ball mode")


class TransformSpec(SchemaModel):
    """Which transform to apply and with which parameters."""

    kind: TransformKind
    cluster: Optional[int] = Field(None, ge=0, description="Target cluster (gamma_star, gamma_plus_plus, angular)")
    subset: Optional[List[int]] = Field(None, description="Explicit index-set")
    lambda_: Optional[float] = Field(None, alias="lambda", description="Contraction factor in (0, 1]")
    factor: Optional[float] = Field(None, description="Angle scaling factor (angular)")
    axis: Optional[List[float]] = Field(None, description="Axis direction (angular)")
    center: Optional[List[float]] = Field(None, description="Center of the angular map")
    two_sided: bool = Field(False, description="Measure angles to the axis line, not the half-line")
    sample: Optional[SubsetSampler] = Field(None, description="Sampler used when subset is omitted")

    @model_validator(mode="after")
    def validate_parameters(self) -> "TransformSpec":
        """Check that the parameters required by ``kind`` are present and in range."""
        if self.kind in CENTRIC_KINDS:
            if self.lambda_ is None:
                raise ValueError(f"{self.kind.value} requires lambda")
            if not 0.0 < self.lambda_ <= 1.0:
                raise ValueError(f"lambda must lie in (0, 1], got {self.lambda_}")
        if self.kind in (TransformKind.GAMMA_STAR, TransformKind.GAMMA_PLUS_PLUS) and self.cluster is None:
            raise ValueError(f"{self.kind.value} requires a target cluster")
        if self.kind in (TransformKind.GAMMA_PLUS_PLUS, TransformKind.CENTRIC_SET):
            if self.subset is None and self.sample is None:
                raise ValueError(f"{self.kind.value} requires a subset or a sampler")
        if self.subset is not None and len(self.subset) == 0:
            raise ValueError("subset must be non-empty")
        if self.kind is TransformKind.ANGULAR:
            if self.factor is None or self.factor <= 0:
                raise ValueError("angular transform requires a positive factor")
            if self.axis is None:
                raise ValueError("angular transform requires an axis")
        return self


class DistanceMatrix(BaseModel):
    """Symmetric, non-negative pairwise distances with a zero diagonal."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray

    @field_validator("values", mode="before")
    @classmethod
    def validate_values(cls, v: Any) -> np.ndarray:
        """Check squareness, symmetry, sign and diagonal."""
        arr = np.asarray(v, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"Distance matrix must be square, got shape {arr.shape}")
        if np.any(arr < 0):
            raise ValueError("Distances must be non-negative")
        if np.any(np.abs(np.diag(arr)) > 0):
            raise ValueError("Distance matrix diagonal must be zero")
        scale = max(1.0, float(arr.max(initial=0.0)))
        if np.any(np.abs(arr - arr.T) > 1e-12 * scale):
            raise ValueError("Distance matrix must be symmetric")
        return _frozen(arr)

    @property
    def n(self) -> int:
        """Number of points."""
        return int(self.values.shape[0])


class KleinbergCheck(BaseModel):
    """Result of checking whether d' is a Kleinberg Gamma-transformation of d."""

    valid: bool
    violation_count: int = Field(0, ge=0, description="Total offending pairs")
    violations: List[Dict[str, Any]] = Field(default_factory=list, description="Offending pairs, truncated")


class TransformOutcome(BaseModel):
    """A transformed dataset with the partition it is expected to keep."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    dataset: Dataset
    expected_partition: Optional[Partition] = None
    metadata: Dict[str, Any] = Field(default_factory=dict)


# =============================================================================
# DATA GENERATION
# =============================================================================

class GenKind(str, Enum):
    """Synthetic dataset families."""
    TWO_SQUARES_3D = "two_squares_3d"
    GAUSSIAN_BLOBS = "gaussian_blobs"


class GenSpec(SchemaModel):
    """Parameters of a synthetic labelled dataset."""

    kind: GenKind
    n: Optional[int] = Field(None, ge=1, description="Total points (two_squares_3d)")
    edge: float = Field(1.0, gt=0.0, description="Square edge length")
    mirrored: bool = Field(False, description="Diagonal-symmetric, congruent square samples (two_squares_3d)")
    k: int = Field(2, ge=1, description="Number of blobs")
    n_per: Optional[int] = Field(None, ge=1, description="Points per blob")
    dim: int = Field(2, ge=1, description="Blob dimension")
    spread: float = Field(1.0, gt=0.0, description="Blob standard deviation")
    separation: float = Field(10.0, gt=0.0, description="Minimum distance between blob centers")
    seed: int = Field(0, description="Generation seed")

    @model_validator(mode="after")
    def validate_sizes(self) -> "GenSpec":
        """Check the per-kind size parameters."""
        if self.kind is GenKind.TWO_SQUARES_3D:
            if self.n is None or self.n < 2:
                raise ValueError("two_squares_3d requires n >= 2")
            if self.mirrored and self.n % 2:
                raise ValueError("mirrored two_squares_3d requires an even n")
        elif self.n_per is None:
            if self.n is None or self.n < self.k:
                raise ValueError("gaussian_blobs requires n_per, or n >= k")
        return self

    @property
    def total_points(self) -> int:
        """Number of points this GenSpec generates."""
        if self.kind is GenKind.TWO_SQUARES_3D:
            return int(self.n or 0)
        if self.n_per is not None:
            return self.k * self.n_per
        return int(self.n or 0) // self.k * self.k


# =============================================================================
# ANALYSIS
# =============================================================================

class AlternativeSplit(BaseModel):
    """An alternative clustering {K_1..K_k} expressed relative to {T, Z_2..Z_k}.

    ``a[i]`` are the points of the transformed set P that K_i takes, ``b[i]``
    the points of Y = T minus P, and ``c[i][j]`` the points of the j-th other
    reference cluster (in increasing label order).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    a: List[np.ndarray]
    b: List[np.ndarray]
    c: List[List[np.ndarray]]

    @field_validator("a", "b", mode="before")
    @classmethod
    def validate_parts(cls, v: Any) -> List[np.ndarray]:
        """Normalize every part to a read-only index array."""
        return [_frozen(as_index_array(part)) for part in v]

    @field_validator("c", mode="before")
    @classmethod
    def validate_c_parts(cls, v: Any) -> List[List[np.ndarray]]:
        """Normalize every part to a read-only index array."""
        return [[_frozen(as_index_array(part)) for part in row] for row in v]

    @model_validator(mode="after")
    def validate_shape(self) -> "AlternativeSplit":
        """Every K_i needs the same number of Z parts and at least one point."""
        if not (len(self.a) == len(self.b) == len(self.c)):
            raise ValueError("a, b and c must describe the same number of alternative clusters")
        widths = {len(row) for row in self.c}
        if len(widths) > 1:
            raise ValueError("every alternative cluster needs one C part per other reference cluster")
        for i in range(len(self.a)):
            if self.a[i].size + self.b[i].size + sum(part.size for part in self.c[i]) == 0:
                raise ValueError(f"alternative cluster K_{i} is empty")
        return self

    @property
    def k(self) -> int:
        """Number of alternative clusters."""
        return len(self.a)

    def cluster_members(self, i: int) -> np.ndarray:
        """All point indices of K_i."""
        parts = [self.a[i], self.b[i], *self.c[i]]
        return np.sort(np.concatenate(parts))

    def to_labels(self, n: int) -> np.ndarray:
        """Label vector of the alternative partition."""
        labels = np.full(n, -1, dtype=np.int64)
        for i in range(self.k):
            labels[self.cluster_members(i)] = i
        return labels


class HLambdaAnalysis(BaseModel):
    """Closed-form decomposition of h(lambda) = quad*lambda^2 + lin*lambda + const."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    quad_coeff: float
    lin_coeff: float
    const_coeff: float
    c_h: float = Field(..., description="Lambda-independent part shared by both costs")
    v_a: List[np.ndarray] = Field(..., description="mu(A_i) - mu(P) per alternative cluster")
    cross_constants: Dict[str, List[Any]] = Field(default_factory=dict)
    strictly_convex: bool = Field(False, description="True when some non-empty A_i has v_A != 0")

    def h_at(self, lam: float) -> float:
        """Evaluate the quadratic at ``lam``."""
        return self.quad_coeff * lam * lam + self.lin_coeff * lam + self.const_coeff


class VerdictKind(str, Enum):
    """Outcome of an oracle preservation check."""
    PRESERVED = "preserved"
    TIE_SKIPPED = "tie_skipped"
    VIOLATED = "violated"


class TheoremVerdict(BaseModel):
    """Result of comparing ideal partitions before and after a transform."""

    verdict: VerdictKind
    check: str = Field("gamma_plus_plus", description="'gamma_plus_plus' or 'gamma_star'")
    pre_cost: float
    post_cost: float
    gap_pre: Optional[float] = Field(None, description="None when only one partition exists")
    gap_post: Optional[float] = None
    lambda_: float = Field(..., alias="lambda")
    subset_size: int
    instance: Optional[int] = Field(None, description="Suite instance index")
    pre_labels: Optional[List[int]] = None
    post_labels: Optional[List[int]] = None

    model_config = ConfigDict(populate_by_name=True)

    def to_json_dict(self) -> Dict[str, Any]:
        """JSON view; partitions are included only for violations."""
        payload = {
            "verdict": self.verdict.value,
            "check": self.check,
            "pre_cost": self.pre_cost,
            "post_cost": self.post_cost,
            "gap_pre": self.gap_pre,
            "gap_post": self.gap_post,
            "lambda": self.lambda_,
            "subset_size": self.subset_size,
        }
        if self.instance is not None:
            payload["instance"] = self.instance
        if self.verdict is VerdictKind.VIOLATED:
            payload["pre_labels"] = self.pre_labels
            payload["post_labels"] = self.post_labels
        return payload


class CollapseVerdict(BaseModel):
    """Result of the lambda = 0 collapse argument for one split."""

    passed: bool
    h0: float
    q_alternative: float = Field(..., description="Q(K'(0))")
    q_collapsed: float = Field(..., description="Q(K''(0))")
    target: int = Field(..., description="Alternative cluster that receives all of P'(0)")


class EndpointScan(BaseModel):
    """h(0) and h(1) for every enumerated alternative partition."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    h0: np.ndarray
    h1: np.ndarray

    @property
    def splits(self) -> int:
        """Number of alternative partitions scanned."""
        return int(self.h0.shape[0])

    @property
    def max_h0(self) -> float:
        """Largest h(0) over all splits."""
        return float(self.h0.max())

    @property
    def max_h1(self) -> float:
        """Largest h(1) over all splits."""
        return float(self.h1.max())


class QuadraticCertificate(BaseModel):
    """Agreement between h(lambda) samples, their quadratic fit and the closed form."""

    fit_coeffs: List[float] = Field(..., description="(quad, lin, const) through lambda = 0, 1/2, 1")
    closed_form_coeffs: List[float] = Field(..., description="(quad, lin, const) from the decomposition")
    probe_lambda: float
    probe_value: float = Field(..., description="h at the probe lambda, computed from costs")
    probe_predicted: float = Field(..., description="Fitted quadratic at the probe lambda")
    probe_rel_error: float
    quad_rel_error: float


class SuiteConfig(SchemaModel):
    """Randomized oracle suite parameters."""

    instances: int = Field(200, ge=1)
    n: int = Field(12, ge=2)
    ks: List[int] = Field(default_factory=lambda: [2], description="Cluster counts drawn per instance")
    dims: List[int] = Field(default_factory=lambda: [2, 3])
    lambdas: List[float] = Field(default_factory=lambda: [0.25, 0.5, 0.75])
    subset_min: int = Field(2, ge=1)
    subset_max: int = Field(5, ge=1)
    check: str = Field("gamma_plus_plus", description="'gamma_plus_plus', 'gamma_star' or 'both'")
    seed: int = 0

    @field_validator("lambdas")
    @classmethod
    def validate_lambdas(cls, v: List[float]) -> List[float]:
        """Every lambda must be a legal contraction factor."""
        if not v or any(not 0.0 < lam <= 1.0 for lam in v):
            raise ValueError("lambdas must be non-empty and lie in (0, 1]")
        return v

    @field_validator("ks", "dims")
    @classmethod
    def validate_positive_lists(cls, v: List[int]) -> List[int]:
        """Cluster counts and dimensions must be positive."""
        if not v or any(x < 1 for x in v):
            raise ValueError("must be a non-empty list of positive integers")
        return v

    @field_validator("check")
    @classmethod
    def validate_check(cls, v: str) -> str:
        """Only the known checks are accepted."""
        if v not in ("gamma_plus_plus", "gamma_star", "both"):
            raise ValueError(f"Unknown check: {v}")
        return v

    @model_validator(mode="after")
    def validate_sizes(self) -> "SuiteConfig":
        """Every drawn k must fit n, and the subset range must be ordered."""
        if max(self.ks) > self.n:
            raise ValueError(f"k={max(self.ks)} exceeds n={self.n}")
        if self.subset_min > self.subset_max:
            raise ValueError("subset_min must not exceed subset_max")
        return self


class SuiteSummary(BaseModel):
    """Counts of verdicts over a randomized suite."""

    preserved: int = 0
    tie_skipped: int = 0
    violated: int = 0
    verdicts: List[TheoremVerdict] = Field(default_factory=list)

    def to_json_dict(self) -> Dict[str, Any]:
        """JSON view with the counts and every verdict."""
        return {
            "schema": SCHEMA_VERSION,
            "preserved": self.preserved,
            "tie_skipped": self.tie_skipped,
            "violated": self.violated,
            "verdicts": [v.to_json_dict() for v in self.verdicts],
        }


# =============================================================================
# EXPERIMENTS
# =============================================================================

class ExperimentConfig(SchemaModel):
    """Full description of a Gamma vs Gamma++ stability experiment."""

    generator: GenSpec
    pre_transform: Optional[TransformSpec] = None
    gamma: TransformSpec
    gamma_plus_plus: TransformSpec
    vary_fraction: bool = Field(True, description="Draw the Gamma++ subset share uniformly up to the sampler fraction")
    lloyd: LloydConfig
    repetitions: int = Field(200, ge=1)
    seed: int = 0
    regenerate: bool = Field(True, description="Generate a fresh dataset for every repetition")

    @model_validator(mode="after")
    def validate_arms(self) -> "ExperimentConfig":
        """The arms must be an angular Gamma and a sampled Gamma++."""
        if self.gamma.kind is not TransformKind.ANGULAR:
            raise ValueError("the gamma arm must be an angular transform")
        if self.gamma_plus_plus.kind is not TransformKind.GAMMA_PLUS_PLUS:
            raise ValueError("the gamma_plus_plus arm must be a gamma_plus_plus transform")
        if self.gamma_plus_plus.sample is None:
            raise ValueError("the gamma_plus_plus arm needs a subset sampler")
        return self


class RunRecord(BaseModel):
    """One clustering run of one experiment arm."""

    repetition: int
    arm: str
    subset_size: int
    data_seed: int
    lloyd_seed: int
    subset_seed: Optional[int] = None
    subset_fraction: Optional[float] = None
    errors: int
    error_rate: float
    cost: float
    kleinberg_valid: Optional[bool] = None


class ArmSummary(BaseModel):
    """Aggregate error statistics of one arm."""

    runs: int
    mean_errors: float
    mean_error_rate: float
    std_error_rate: float
    max_errors: int
    histogram: Dict[str, int]


class ExperimentReport(SchemaModel):
    """Per-run records, aggregates and the config that reproduces them."""

    config: ExperimentConfig
    n_points: int
    records: List[RunRecord]
    arms: Dict[str, ArmSummary]
    wall_time_seconds: Optional[float] = Field(None, exclude=True, description="Not serialized")
