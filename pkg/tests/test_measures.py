"""Classification against the reference table and enrichment behavior."""

import csv

import numpy as np
import pytest

from triadnet import (
    KINDS,
    TRIAD_TYPES,
    BlockmodelSpec,
    classify,
    enrichment,
    enrichment_profile,
    write_enrichment_csv,
)
from triadnet.measures import _REFERENCE


@pytest.mark.parametrize("kind", KINDS)
def test_classification_partitions_all_types(kind):
    cls = classify(BlockmodelSpec(kind))
    assert cls.allowed | cls.forbidden == set(TRIAD_TYPES)
    assert not cls.allowed & cls.forbidden
    assert cls.selected_allowed <= cls.allowed
    assert cls.selected_forbidden <= cls.forbidden


@pytest.mark.parametrize("kind", KINDS)
def test_forbidden_matches_reference_empty_cells(kind):
    cls = classify(BlockmodelSpec(kind))
    ref_allowed = {t for t, (v, _) in _REFERENCE[kind].items() if v is not None}
    assert cls.allowed == ref_allowed


def test_selected_sets_spot_checks():
    coh = classify(BlockmodelSpec("cohesive"))
    assert coh.selected_allowed == {"300", "102"}
    assert coh.selected_forbidden == {"021U", "021D"}
    acp = classify(BlockmodelSpec("core_periphery_asymmetric"))
    assert acp.selected_allowed == {"300", "120D", "021U"}
    assert acp.selected_forbidden == {"102"}
    hnd = classify(BlockmodelSpec("hierarchical_nodiag"))
    assert hnd.selected_allowed == {"021U", "021D"}
    assert hnd.selected_forbidden == {"120D", "201", "111D"}
    assert "021C" in hnd.allowed  # allowed but deliberately not selected
    td = classify(BlockmodelSpec("transitivity_diag"))
    assert td.selected_allowed == {"120D", "120U", "030T"}
    assert "300" in td.allowed - td.selected


def test_enrichment_forbidden_types_have_zero_ratio():
    spec = BlockmodelSpec("cohesive")
    rep = enrichment(spec, 200, np.random.default_rng(3))
    cls = classify(spec)
    for t in cls.forbidden:
        if rep.ratio[t] is not None:
            assert rep.ratio[t] == 0.0
        assert rep.model_counts[t] == 0


def test_enrichment_seed_determinism():
    spec = BlockmodelSpec("transitivity_diag")
    a = enrichment(spec, 50, np.random.default_rng(9))
    b = enrichment(spec, 50, np.random.default_rng(9))
    assert a == b


def test_enrichment_reference_value_cheap_check():
    # The mutual-dyad type in a cohesive blockmodel is a stable, mid-sized
    # count; 400 draws pin its ratio well inside the reference tolerance.
    rep = enrichment(BlockmodelSpec("cohesive"), 400, np.random.default_rng(17))
    assert rep.ratio["102"] == pytest.approx(10.2, rel=0.15)


def test_profile_zero_level_equals_enrichment_exactly():
    spec = BlockmodelSpec("hierarchical_diag")
    base = enrichment(spec, 120, np.random.default_rng(5))
    prof = enrichment_profile(spec, [0.0, 0.6], 120, np.random.default_rng(5))
    assert prof[0.0] == base


def test_profile_full_noise_ratios_near_one():
    spec = BlockmodelSpec("transitivity_nodiag")
    prof = enrichment_profile(spec, [1.0], 500, np.random.default_rng(21))
    rep = prof[1.0]
    for t in TRIAD_TYPES:
        if rep.mean_random_counts[t] >= 20:
            assert rep.ratio[t] == pytest.approx(1.0, abs=0.1)


def test_profile_validates_levels():
    spec = BlockmodelSpec("cohesive")
    with pytest.raises(ValueError):
        enrichment_profile(spec, [0.0, 1.2], 10, np.random.default_rng(0))


def test_undefined_ratio_is_none_not_infinite():
    # With a single randomization draw, some rare type has a zero baseline.
    spec = BlockmodelSpec("hierarchical_nodiag")
    rep = enrichment(spec, 1, np.random.default_rng(2))
    zero_baseline = [t for t in TRIAD_TYPES if rep.mean_random_counts[t] == 0]
    assert zero_baseline, "expected at least one zero-count type in one draw"
    for t in zero_baseline:
        assert rep.ratio[t] is None
    assert all(v is None or np.isfinite(v) for v in rep.ratio.values())


def test_enrichment_csv_round_trip(tmp_path):
    spec = BlockmodelSpec("cohesive")
    prof = enrichment_profile(spec, [0.0, 1.0], 30, np.random.default_rng(1))
    path = tmp_path / "enrichment.csv"
    write_enrichment_csv(path, [prof[0.0], prof[1.0]])
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 32
    assert rows[0]["blockmodel_kind"] == "cohesive"
    assert set(r["level_of_errors"] for r in rows) == {"0", "1"}
    undefined = [r for r in rows if r["ratio"] == ""]
    for r in undefined:
        assert float(r["mean_random_count"]) == 0.0
