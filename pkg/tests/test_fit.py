"""Criterion function, partition optimizer, and improvement aggregation."""

from itertools import product

import numpy as np
import pytest

from triadnet import (
    KINDS,
    BlockmodelSpec,
    Partition,
    build_ideal,
    canonical_partition,
    criterion,
    fit_prespecified,
    mean_improvement,
    perturb,
    randomize_total,
)

from conftest import random_digraph


def test_criterion_ideal_network_is_zero():
    spec = BlockmodelSpec("cohesive", (8, 8, 8))
    g = build_ideal(spec)
    value, per_block = criterion(g, canonical_partition(spec), spec.image())
    assert value == 0
    assert per_block.sum() == 0


def test_criterion_all_null_image_counts_every_arc():
    spec = BlockmodelSpec("cohesive", (8, 8, 8))
    g = build_ideal(spec)
    value, _ = criterion(g, canonical_partition(spec), np.zeros((3, 3), dtype=bool))
    assert value == 168


def test_criterion_single_relocation_costs_two():
    spec = BlockmodelSpec("cohesive", (8, 8, 8))
    g = build_ideal(spec)
    g.remove_arc(0, 1)   # inside a complete block
    g.add_arc(0, 12)     # inside a null block
    value, per_block = criterion(g, canonical_partition(spec), spec.image())
    assert value == 2
    assert per_block[0, 0] == 1 and per_block[0, 1] == 1


def test_criterion_equals_per_block_sum():
    rng = np.random.default_rng(3)
    spec = BlockmodelSpec("hierarchical_diag")
    g = randomize_total(spec, rng)
    value, per_block = criterion(g, canonical_partition(spec), spec.image())
    assert value == per_block.sum()


def test_criterion_validates_shapes():
    spec = BlockmodelSpec("cohesive", (8, 8, 8))
    g = build_ideal(spec)
    with pytest.raises(ValueError):
        criterion(g, canonical_partition(spec), np.zeros((2, 2), dtype=bool))
    with pytest.raises(ValueError):
        criterion(g, Partition(np.zeros(10, dtype=int), 1), np.zeros((1, 1)))


def test_partition_rejects_empty_clusters():
    with pytest.raises(ValueError):
        Partition(np.zeros(5, dtype=int), 2)


def _brute_force_best(g, image, k):
    best = None
    for labels in product(range(k), repeat=g.n):
        if len(set(labels)) < k:
            continue
        value, _ = criterion(g, Partition(np.array(labels), k), image)
        if best is None or value < best:
            best = value
    return best


def test_optimizer_matches_exhaustive_enumeration_small():
    rng = np.random.default_rng(11)
    images = [np.array(bits, dtype=bool).reshape(2, 2) for bits in product([0, 1], repeat=4)]
    for trial in range(25):
        n = int(rng.integers(4, 7))
        g = random_digraph(rng, n)
        image = images[int(rng.integers(len(images)))]
        expected = _brute_force_best(g, image, 2)
        got = fit_prespecified(g, image, 2, restarts=20, rng=rng).criterion
        assert got == expected


@pytest.mark.parametrize("kind", KINDS)
def test_optimizer_recovers_ideal_networks(kind):
    spec = BlockmodelSpec(kind)
    g = build_ideal(spec)
    result = fit_prespecified(g, spec.image(), spec.k, restarts=20,
                              rng=np.random.default_rng(5))
    assert result.criterion == 0


def test_optimizer_beats_canonical_partition_bound():
    spec = BlockmodelSpec("transitivity_diag")
    rng = np.random.default_rng(7)
    g = perturb(build_ideal(spec), spec, 0.4, rng)
    canonical_value, _ = criterion(g, canonical_partition(spec), spec.image())
    result = fit_prespecified(g, spec.image(), spec.k, restarts=20, rng=rng)
    assert result.criterion <= canonical_value


def test_optimizer_validation():
    g = random_digraph(np.random.default_rng(0), 6)
    image = np.zeros((2, 2), dtype=bool)
    with pytest.raises(ValueError):
        fit_prespecified(g, image, 1)
    with pytest.raises(ValueError):
        fit_prespecified(g, image, 7)
    with pytest.raises(ValueError):
        fit_prespecified(g, image, 2, restarts=0)


def test_perturbation_degrades_fit_monotonically_in_expectation():
    spec = BlockmodelSpec("cohesive", (8, 8, 8))
    ideal = build_ideal(spec)
    rng = np.random.default_rng(13)
    means = []
    for level in (0.0, 0.2, 0.4, 0.6, 0.8, 1.0):
        values = []
        for _ in range(4):
            g = perturb(ideal, spec, level, rng)
            values.append(
                fit_prespecified(g, spec.image(), spec.k, restarts=10, rng=rng).criterion
            )
        means.append(np.mean(values))
    assert all(b >= a - 2 for a, b in zip(means, means[1:]))
    assert means[-1] > means[0]


def test_mean_improvement_examples():
    assert mean_improvement([(0, 50), (0, 80)]).value == 1.0
    assert mean_improvement([(30, 30), (70, 70)]).value == 0.0
    assert mean_improvement([(50, 100), (25, 100)]).value == pytest.approx(0.625)


def test_mean_improvement_excludes_zero_baselines():
    result = mean_improvement([(10, 0), (25, 100)])
    assert result.n_excluded == 1
    assert result.value == pytest.approx(0.75)
    empty = mean_improvement([(5, 0)])
    assert empty.value is None
    assert empty.n_excluded == 1
