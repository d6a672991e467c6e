"""Ideal blockmodel networks, noisy variants, and density-matched randomization.

Seven blockmodel kinds over null/complete blocks (structural equivalence).
Noise is parameterized by an error level in [0, 1]: 0 keeps the ideal
network, 1 relocates enough arcs that complete and null blocks have equal
expected density (a density-matched totally random network).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import DirectedGraph

__all__ = [
    "KINDS",
    "BlockmodelSpec",
    "Partition",
    "build_ideal",
    "canonical_partition",
    "relocation_count",
    "perturb",
    "randomize_total",
    "uniform_random_graph",
]

KINDS = (
    "cohesive",
    "core_periphery_symmetric",
    "core_periphery_asymmetric",
    "hierarchical_nodiag",
    "hierarchical_diag",
    "transitivity_nodiag",
    "transitivity_diag",
)

# Cluster-size defaults chosen to reproduce the reference triad statistics
# at n = 24; all overridable per spec.
_DEFAULT_SIZES = {
    "cohesive": (6, 8, 10),
    "core_periphery_symmetric": (12, 12),
    "core_periphery_asymmetric": (12, 12),
    "hierarchical_nodiag": (8, 8, 8),
    "hierarchical_diag": (8, 8, 8),
    "transitivity_nodiag": (8, 8, 8),
    "transitivity_diag": (8, 8, 8),
}


@dataclass(frozen=True)
class BlockmodelSpec:
    """A blockmodel kind plus ordered cluster sizes.

    Cluster order is the hierarchy order where applicable: cluster 0 is the
    top level (or the core), and links flow from lower clusters upward.
    """

    kind: str
    cluster_sizes: tuple[int, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown blockmodel kind {self.kind!r}")
        sizes = self.cluster_sizes
        if sizes is None:
            sizes = _DEFAULT_SIZES[self.kind]
        sizes = tuple(int(s) for s in sizes)
        if any(s < 1 for s in sizes):
            raise ValueError("cluster sizes must be positive")
        k = len(sizes)
        if self.kind in ("core_periphery_symmetric", "core_periphery_asymmetric"):
            if k != 2:
                raise ValueError(f"{self.kind} requires exactly 2 clusters (core, periphery)")
        elif k < 2:
            raise ValueError(f"{self.kind} requires at least 2 clusters")
        object.__setattr__(self, "cluster_sizes", sizes)

    @property
    def n(self) -> int:
        return sum(self.cluster_sizes)

    @property
    def k(self) -> int:
        return len(self.cluster_sizes)

    def image(self) -> np.ndarray:
        """The k x k block-type matrix; True marks a complete block."""
        k = self.k
        img = np.zeros((k, k), dtype=bool)
        if self.kind == "cohesive":
            np.fill_diagonal(img, True)
        elif self.kind == "core_periphery_symmetric":
            img[0, 0] = img[0, 1] = img[1, 0] = True
        elif self.kind == "core_periphery_asymmetric":
            img[0, 0] = img[1, 0] = True  # core-core and periphery -> core
        elif self.kind in ("hierarchical_nodiag", "hierarchical_diag"):
            for r in range(1, k):
                img[r, r - 1] = True  # each cluster feeds the level above
            if self.kind == "hierarchical_diag":
                np.fill_diagonal(img, True)
        elif self.kind in ("transitivity_nodiag", "transitivity_diag"):
            for r in range(k):
                img[r, :r] = True  # each cluster feeds every level above
            if self.kind == "transitivity_diag":
                np.fill_diagonal(img, True)
        return img


@dataclass(frozen=True)
class Partition:
    """Assignment of units to clusters 0..k-1 with no empty cluster."""

    assignment: np.ndarray
    k: int

    def __post_init__(self):
        a = np.asarray(self.assignment, dtype=np.intp)
        object.__setattr__(self, "assignment", a)
        if a.ndim != 1:
            raise ValueError("assignment must be one-dimensional")
        if a.min(initial=0) < 0 or (a.max(initial=0) >= self.k):
            raise ValueError("cluster indices out of range")
        present = np.bincount(a, minlength=self.k)
        if (present == 0).any():
            raise ValueError("empty clusters are not allowed")

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k)


def canonical_partition(spec: BlockmodelSpec) -> Partition:
    """Contiguous index ranges in cluster_sizes order."""
    return Partition(np.repeat(np.arange(spec.k), spec.cluster_sizes), spec.k)


def build_ideal(spec: BlockmodelSpec) -> DirectedGraph:
    """The ideal network: arc (i, j) present iff its block is complete."""
    labels = canonical_partition(spec).assignment
    img = spec.image()
    a = img[labels[:, None], labels[None, :]].astype(np.uint8)
    np.fill_diagonal(a, 0)
    return DirectedGraph(a)


def relocation_count(m: int, n: int, error_level: float) -> int:
    """Number of arcs to relocate for a given error level.

    At error_level 1 the expected densities of complete and null blocks
    coincide with the overall density; the count scales linearly below that.
    """
    if not 0.0 <= error_level <= 1.0:
        raise ValueError("error_level must be in [0, 1]")
    slots = n * n - n
    if m > slots:
        raise ValueError("arc count exceeds available slots")
    return round((m - m * m / slots) * error_level)


def _block_slot_indices(spec: BlockmodelSpec):
    """Flat indices of off-diagonal slots inside complete and null blocks."""
    labels = canonical_partition(spec).assignment
    img = spec.image()
    complete = img[labels[:, None], labels[None, :]].copy()
    off_diag = ~np.eye(spec.n, dtype=bool)
    complete_idx = np.flatnonzero(complete & off_diag)
    null_idx = np.flatnonzero(~complete & off_diag)
    return complete_idx, null_idx


def perturb(
    ideal: DirectedGraph,
    spec: BlockmodelSpec,
    error_level: float,
    rng: np.random.Generator,
) -> DirectedGraph:
    """Relocate k arcs of the ideal network from complete to null blocks.

    Removals are uniform over complete-block arcs, additions uniform over
    empty null-block slots; the arc count and diagonal are untouched.
    """
    if ideal.n != spec.n:
        raise ValueError("graph size does not match spec")
    complete_idx, null_idx = _block_slot_indices(spec)
    flat = ideal.a.ravel()
    arcs_in_complete = complete_idx[flat[complete_idx] == 1]
    free_in_null = null_idx[flat[null_idx] == 0]
    k = relocation_count(ideal.arc_count(), ideal.n, error_level)
    if k > arcs_in_complete.size or k > free_in_null.size:
        raise ValueError(
            f"cannot relocate {k} arcs: {arcs_in_complete.size} complete-block "
            f"arcs and {free_in_null.size} free null-block slots available"
        )
    out = ideal.a.copy()
    flat_out = out.ravel()
    if k > 0:
        removed = rng.choice(arcs_in_complete, size=k, replace=False)
        added = rng.choice(free_in_null, size=k, replace=False)
        flat_out[removed] = 0
        flat_out[added] = 1
    return DirectedGraph(out)


def randomize_total(spec: BlockmodelSpec, rng: np.random.Generator) -> DirectedGraph:
    """A density-matched totally random network for the spec's ideal graph."""
    return perturb(build_ideal(spec), spec, 1.0, rng)


def uniform_random_graph(n: int, m: int, rng: np.random.Generator) -> DirectedGraph:
    """A uniform random digraph with exactly m arcs on n units."""
    slots = n * n - n
    if not 0 <= m <= slots:
        raise ValueError(f"m must be in [0, {slots}]")
    off_diag = np.flatnonzero(~np.eye(n, dtype=bool))
    chosen = rng.choice(off_diag, size=m, replace=False)
    a = np.zeros(n * n, dtype=np.uint8)
    a[chosen] = 1
    return DirectedGraph(a.reshape(n, n))
