"""Relocation search invariants and stated examples."""

import numpy as np
import pytest

from triadnet import (
    BlockmodelSpec,
    DirectedGraph,
    TermSet,
    build_ideal,
    classify,
    deviation,
    randomize_total,
    rl_generate,
    targets_from_ideal,
    triad_census,
)
from triadnet.census import TRIAD_INDEX, census_counts


def test_deviation_examples():
    assert deviation([1, 2, 3], [1, 2, 3]) == 0.0
    assert deviation([3, 0], [0, 4]) == 25.0
    spec = BlockmodelSpec("cohesive", (8, 8, 8))
    counts = census_counts(build_ideal(spec))
    targets = targets_from_ideal(spec, "all").targets
    assert deviation(counts, targets) == 0.0


def test_deviation_length_mismatch():
    with pytest.raises(ValueError):
        deviation([1, 2], [1, 2, 3])


def test_search_with_satisfied_targets_is_identity():
    spec = BlockmodelSpec("core_periphery_asymmetric")
    init = randomize_total(spec, np.random.default_rng(0))
    terms = TermSet(
        terms=tuple(TRIAD_INDEX), targets=census_counts(init).astype(np.int64)
    )
    out, trace = rl_generate(terms, init, 500, np.random.default_rng(1))
    assert out == init
    assert trace.initial_deviation == 0
    assert trace.early_stop_iteration == 0
    assert not trace.accepted.any()


def test_search_preconditions():
    spec = BlockmodelSpec("cohesive", (8, 8, 8))
    terms = targets_from_ideal(spec, "all")
    with pytest.raises(ValueError):
        rl_generate(terms, DirectedGraph.empty(24), 100, np.random.default_rng(0))
    with pytest.raises(ValueError):
        rl_generate(terms, DirectedGraph.complete(24), 100, np.random.default_rng(0))
    weights_only = TermSet(terms=("300",), weights=np.array([2.0]))
    init = randomize_total(spec, np.random.default_rng(0))
    with pytest.raises(ValueError):
        rl_generate(weights_only, init, 100, np.random.default_rng(0))


def test_accepted_deviations_strictly_decrease():
    spec = BlockmodelSpec("transitivity_diag")
    terms = targets_from_ideal(spec, "all")
    rng = np.random.default_rng(3)
    init = randomize_total(spec, rng)
    out, trace = rl_generate(terms, init, 30_000, rng)
    accepted = trace.accepted_deviations()
    assert len(accepted) > 0
    assert (np.diff(accepted) < 0).all()
    assert accepted[0] < trace.initial_deviation
    assert trace.deviations[-1] <= trace.initial_deviation


def test_density_preserved_and_deterministic():
    spec = BlockmodelSpec("hierarchical_diag")
    terms = targets_from_ideal(spec, "allowed")
    init = randomize_total(spec, np.random.default_rng(4))
    out1, _ = rl_generate(terms, init, 5000, np.random.default_rng(9))
    out2, _ = rl_generate(terms, init, 5000, np.random.default_rng(9))
    assert out1 == out2
    assert out1.arc_count() == init.arc_count()
    assert init == randomize_total(spec, np.random.default_rng(4))  # input untouched


def test_forbidden_targets_drive_counts_down():
    spec = BlockmodelSpec("cohesive", (8, 8, 8))
    terms = targets_from_ideal(spec, "forbidden")
    assert (terms.targets == 0).all()
    forbidden_idx = [TRIAD_INDEX[t] for t in terms.terms]
    rng = np.random.default_rng(5)
    init = randomize_total(spec, rng)
    before = census_counts(init)[forbidden_idx].sum()
    out, trace = rl_generate(terms, init, 30_000, rng)
    after = census_counts(out)[forbidden_idx].sum()
    assert after < before
    assert trace.deviations[-1] < trace.initial_deviation


def test_path3_term_participates_in_search():
    spec = BlockmodelSpec("hierarchical_nodiag")
    terms = targets_from_ideal(spec, "selected", include_path3=True)
    assert terms.terms[-1] == "3path"
    assert terms.targets[-1] == 0  # no 3-trails exist in the ideal hierarchy
    rng = np.random.default_rng(6)
    init = randomize_total(spec, rng)
    out, trace = rl_generate(terms, init, 20_000, rng)
    assert trace.deviations[-1] < trace.initial_deviation


def test_trace_csv_export(tmp_path):
    spec = BlockmodelSpec("cohesive", (8, 8, 8))
    terms = targets_from_ideal(spec, "all")
    rng = np.random.default_rng(7)
    _, trace = rl_generate(terms, randomize_total(spec, rng), 200, rng)
    path = tmp_path / "trace.csv"
    trace.to_csv(path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "iteration,deviation,accepted"
    assert len(lines) == trace.iterations_run() + 1
