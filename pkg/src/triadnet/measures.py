"""Triad-type classification per blockmodel kind and enrichment ratios.

A triad type is forbidden for a blockmodel kind when its count in the ideal
network is zero, allowed otherwise.  The enrichment ratio of a type is its
ideal-network count over its mean count in density-matched totally random
networks; values well above 1 mark types that carry the structure rather
than the density.  Curated subsets of both classes ("selected" types) are
shipped as reference data for the seven canonical kinds.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .blockmodel import BlockmodelSpec, build_ideal, perturb, randomize_total
from .census import TRIAD_TYPES, census_counts
from .graph import DirectedGraph

__all__ = [
    "TriadClassification",
    "EnrichmentReport",
    "classify",
    "enrichment",
    "enrichment_profile",
    "reference_ratio",
    "write_enrichment_csv",
]

# Reference enrichment table for the canonical kinds at default sizes:
# triad -> (reference ratio or None when forbidden, member of selected set).
# Types absent from a kind's dict are forbidden and not selected.
_REFERENCE: dict[str, dict[str, tuple[float | None, bool]]] = {
    "cohesive": {
        "003": (2.3, False), "300": (96.3, True), "102": (10.2, True),
        "021U": (None, True), "021D": (None, True),
    },
    "core_periphery_asymmetric": {
        "003": (7.1, False), "300": (7.5, True), "120D": (8.2, True),
        "021U": (8.2, True), "102": (None, True),
    },
    "core_periphery_symmetric": {
        "003": (7.2, False), "300": (2.7, True), "201": (6.6, True),
        "120D": (None, True), "120U": (None, True), "102": (None, True),
        "021C": (None, True), "021U": (None, True), "021D": (None, True),
        "120C": (None, True),
    },
    "hierarchical_nodiag": {
        "003": (1.5, False), "021C": (2.2, False), "021U": (4.0, True),
        "021D": (4.0, True), "120D": (None, True), "201": (None, True),
        "111D": (None, True),
    },
    "hierarchical_diag": {
        "300": (3.7, True), "120D": (4.1, True), "120U": (4.1, True),
        "102": (5.8, True), "021C": (3.1, True), "021U": (None, True),
        "021D": (None, True), "201": (None, True), "120C": (None, True),
    },
    "transitivity_nodiag": {
        "003": (1.1, False), "021U": (5.1, True), "021D": (5.1, True),
        "030T": (3.5, True), "021C": (None, True), "120C": (None, True),
        "111D": (None, True), "111U": (None, True),
    },
    "transitivity_diag": {
        "300": (1.2, False), "120D": (5.1, True), "120U": (5.1, True),
        "030T": (3.5, True), "102": (None, True), "021C": (None, True),
        "201": (None, True), "120C": (None, True), "111D": (None, True),
        "111U": (None, True),
    },
}


@dataclass(frozen=True)
class TriadClassification:
    """Allowed/forbidden split plus the curated selected subsets."""

    allowed: frozenset[str]
    forbidden: frozenset[str]
    selected_allowed: frozenset[str]
    selected_forbidden: frozenset[str]

    @property
    def selected(self) -> frozenset[str]:
        return self.selected_allowed | self.selected_forbidden


def classify(spec: BlockmodelSpec) -> TriadClassification:
    """Split the 16 triad types by their count in the spec's ideal network.

    The selected subsets come from the shipped reference data for the kind;
    they describe the canonical cluster sizes.
    """
    counts = census_counts(build_ideal(spec))
    allowed = frozenset(t for t, c in zip(TRIAD_TYPES, counts) if c > 0)
    forbidden = frozenset(TRIAD_TYPES) - allowed
    ref = _REFERENCE[spec.kind]
    selected = {t for t, (_, sel) in ref.items() if sel}
    return TriadClassification(
        allowed=allowed,
        forbidden=forbidden,
        selected_allowed=frozenset(selected & allowed),
        selected_forbidden=frozenset(selected & forbidden),
    )


def reference_ratio(kind: str, triad_type: str) -> float | None:
    """Shipped reference enrichment ratio; None for forbidden types."""
    value, _ = _REFERENCE[kind].get(triad_type, (None, False))
    return value


@dataclass(frozen=True)
class EnrichmentReport:
    """Per-type model counts against the random baseline at one error level.

    ratio maps each type to model_count / mean_random_count, 0.0 when the
    model count is zero, and None (undefined) when the baseline mean is 0.
    """

    kind: str
    error_level: float
    model_counts: dict[str, float]
    mean_random_counts: dict[str, float]
    ratio: dict[str, float | None]


def _make_report(kind, error_level, model, baseline) -> EnrichmentReport:
    ratio: dict[str, float | None] = {}
    for t, num, den in zip(TRIAD_TYPES, model, baseline):
        ratio[t] = None if den == 0 else float(num / den)
    return EnrichmentReport(
        kind=kind,
        error_level=error_level,
        model_counts={t: float(c) for t, c in zip(TRIAD_TYPES, model)},
        mean_random_counts={t: float(c) for t, c in zip(TRIAD_TYPES, baseline)},
        ratio=ratio,
    )


def _mean_random_counts(spec, reps, rng) -> np.ndarray:
    acc = np.zeros(16, dtype=np.float64)
    for _ in range(reps):
        acc += census_counts(randomize_total(spec, rng))
    return acc / reps


def enrichment(
    spec: BlockmodelSpec, reps: int, rng: np.random.Generator
) -> EnrichmentReport:
    """Ideal-network triad counts over their means in `reps` randomizations."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    ideal_counts = census_counts(build_ideal(spec)).astype(np.float64)
    baseline = _mean_random_counts(spec, reps, rng)
    return _make_report(spec.kind, 0.0, ideal_counts, baseline)


def enrichment_profile(
    spec: BlockmodelSpec,
    error_levels,
    reps: int,
    rng: np.random.Generator,
) -> dict[float, EnrichmentReport]:
    """Enrichment against the same random baseline at several error levels.

    At error level 0 the numerator is the exact ideal count, so the report
    coincides with enrichment() run with the same seed and reps.
    """
    levels = [float(x) for x in error_levels]
    if any(not 0.0 <= x <= 1.0 for x in levels):
        raise ValueError("error levels must lie in [0, 1]")
    ideal = build_ideal(spec)
    ideal_counts = census_counts(ideal).astype(np.float64)
    baseline = _mean_random_counts(spec, reps, rng)
    out: dict[float, EnrichmentReport] = {}
    for le in levels:
        if le == 0.0:
            model = ideal_counts
        else:
            acc = np.zeros(16, dtype=np.float64)
            for _ in range(reps):
                acc += census_counts(perturb(ideal, spec, le, rng))
            model = acc / reps
        out[le] = _make_report(spec.kind, le, model, baseline)
    return out


def write_enrichment_csv(path, reports) -> None:
    """Write reports (any iterable of EnrichmentReport) as a flat CSV."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["blockmodel_kind", "triad_type", "level_of_errors",
             "ideal_or_mean_model_count", "mean_random_count", "ratio"]
        )
        for rep in reports:
            for t in TRIAD_TYPES:
                r = rep.ratio[t]
                writer.writerow([
                    rep.kind, t, f"{rep.error_level:.10g}",
                    f"{rep.model_counts[t]:.10g}",
                    f"{rep.mean_random_counts[t]:.10g}",
                    "" if r is None else f"{r:.10g}",
                ])
