"""Pre-specified blockmodeling under structural equivalence.

The criterion counts inconsistencies between a network and an image matrix
of null/complete blocks: arcs inside null blocks plus missing off-diagonal
slots inside complete blocks.  The optimizer hill-climbs over partitions
with single-unit transfers and pairwise exchanges from random restarts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .blockmodel import Partition
from .graph import DirectedGraph

__all__ = ["FitResult", "ImprovementResult", "criterion", "fit_prespecified", "mean_improvement"]


def _per_block_errors(a64, labels, image) -> np.ndarray:
    k = image.shape[0]
    z = np.zeros((a64.shape[0], k), dtype=np.int64)
    z[np.arange(a64.shape[0]), labels] = 1
    arcs_in_block = z.T @ a64 @ z
    sizes = z.sum(axis=0)
    slots = np.outer(sizes, sizes) - np.diag(sizes)
    return np.where(image, slots - arcs_in_block, arcs_in_block)


def criterion(
    g: DirectedGraph, p: Partition, image: np.ndarray
) -> tuple[int, np.ndarray]:
    """Total inconsistency count and the k x k per-block error matrix."""
    image = np.asarray(image, dtype=bool)
    if image.shape != (p.k, p.k):
        raise ValueError(f"image shape {image.shape} does not match k={p.k}")
    if len(p.assignment) != g.n:
        raise ValueError("partition does not cover all units")
    errors = _per_block_errors(g.a.astype(np.int64), p.assignment, image)
    return int(errors.sum()), errors


@dataclass(frozen=True)
class FitResult:
    partition: Partition
    criterion: int
    per_block_errors: np.ndarray
    restarts_used: int


def _random_partition(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random labels with every cluster non-empty."""
    labels = rng.integers(0, k, size=n)
    anchors = rng.permutation(n)[:k]
    labels[anchors] = np.arange(k)
    return labels.astype(np.intp)


def _total_errors(a64, labels, image) -> int:
    return int(_per_block_errors(a64, labels, image).sum())


def _hill_climb(a64, labels, image, k, rng) -> tuple[np.ndarray, int]:
    """First-improvement search over transfers and exchanges, random scan order."""
    n = len(labels)
    value = _total_errors(a64, labels, image)
    improved = True
    while improved:
        improved = False
        sizes = np.bincount(labels, minlength=k)
        moves = []
        for u in range(n):
            if sizes[labels[u]] > 1:
                for c in range(k):
                    if c != labels[u]:
                        moves.append((u, -1, c))
        for u in range(n):
            for v in range(u + 1, n):
                if labels[u] != labels[v]:
                    moves.append((u, v, -1))
        rng.shuffle(moves)
        for u, v, c in moves:
            if v < 0:  # transfer u to cluster c
                if sizes[labels[u]] <= 1:
                    continue
                old = labels[u]
                labels[u] = c
                candidate = _total_errors(a64, labels, image)
                if candidate < value:
                    value = candidate
                    improved = True
                    break
                labels[u] = old
            else:  # exchange the clusters of u and v
                if labels[u] == labels[v]:
                    continue
                labels[u], labels[v] = labels[v], labels[u]
                candidate = _total_errors(a64, labels, image)
                if candidate < value:
                    value = candidate
                    improved = True
                    break
                labels[u], labels[v] = labels[v], labels[u]
    return labels, value


def _best_relabeling(a64, labels, image, k) -> tuple[np.ndarray, int]:
    """Minimum over the k! cluster relabelings; image rows stay fixed, so
    order-sensitive images need this to absorb label symmetry."""
    best_labels, best_value = labels, _total_errors(a64, labels, image)
    for perm in permutations(range(k)):
        mapping = np.array(perm, dtype=np.intp)
        relabeled = mapping[labels]
        value = _total_errors(a64, relabeled, image)
        if value < best_value:
            best_labels, best_value = relabeled, value
    return best_labels, best_value


def fit_prespecified(
    g: DirectedGraph,
    image: np.ndarray,
    k: int,
    restarts: int = 20,
    rng: np.random.Generator | None = None,
) -> FitResult:
    """Best partition found over `restarts` randomly initialized climbs."""
    image = np.asarray(image, dtype=bool)
    if image.shape != (k, k):
        raise ValueError(f"image shape {image.shape} does not match k={k}")
    if k < 2:
        raise ValueError("k must be >= 2")
    if k > g.n:
        raise ValueError("k cannot exceed the number of units")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if rng is None:
        rng = np.random.default_rng()
    a64 = g.a.astype(np.int64)
    best_labels, best_value = None, None
    for _ in range(restarts):
        labels = _random_partition(g.n, k, rng)
        labels, _ = _hill_climb(a64, labels, image, k, rng)
        labels, value = _best_relabeling(a64, labels, image, k)
        if best_value is None or value < best_value:
            best_labels, best_value = labels.copy(), value
    partition = Partition(best_labels, k)
    _, errors = criterion(g, partition, image)
    return FitResult(
        partition=partition,
        criterion=best_value,
        per_block_errors=errors,
        restarts_used=restarts,
    )


@dataclass(frozen=True)
class ImprovementResult:
    """Mean improvement of model criteria over random baselines.

    value = 1 - mean(P_model / P_random); 1 means perfectly recovered
    structure, 0 means no better than random.  Pairs with P_random = 0 are
    excluded from the mean and counted in n_excluded; value is None when no
    pair survives.
    """

    value: float | None
    pairs: tuple[tuple[int, int], ...]
    n_excluded: int


def mean_improvement(pairs) -> ImprovementResult:
    """Aggregate (P_model, P_random) pairs into the mean improvement value."""
    pairs = tuple((int(pm), int(pr)) for pm, pr in pairs)
    valid = [(pm, pr) for pm, pr in pairs if pr > 0]
    n_excluded = len(pairs) - len(valid)
    if not valid:
        return ImprovementResult(value=None, pairs=pairs, n_excluded=n_excluded)
    ratios = [pm / pr for pm, pr in valid]
    return ImprovementResult(
        value=1.0 - sum(ratios) / len(ratios),
        pairs=pairs,
        n_excluded=n_excluded,
    )
