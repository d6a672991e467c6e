"""Local-statistic term sets: triad types plus the 3-trail count.

A TermSet carries an ordered list of statistics with either integer target
counts (for the relocation search) or real weights (for the sampler).
Preset builders derive both flavors from a blockmodel spec and a named
subset: all, allowed, forbidden, selected, selected_allowed,
selected_forbidden.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blockmodel import BlockmodelSpec, build_ideal
from .census import TRIAD_INDEX, TRIAD_TYPES, census_counts, count_3paths
from .graph import DirectedGraph
from .measures import classify

__all__ = [
    "PATH3",
    "TERM_SET_NAMES",
    "TermSet",
    "term_names_for",
    "targets_from_ideal",
    "default_weights",
    "hierarchy_fix_weights",
    "stat_vector",
]

#: Label of the directed 3-trail statistic.
PATH3 = "3path"

TERM_SET_NAMES = (
    "all", "allowed", "forbidden",
    "selected", "selected_allowed", "selected_forbidden",
)


@dataclass(frozen=True)
class TermSet:
    """Ordered statistics with aligned targets (counts) or weights (reals)."""

    terms: tuple[str, ...]
    targets: np.ndarray | None = None
    weights: np.ndarray | None = None

    def __post_init__(self):
        if len(set(self.terms)) != len(self.terms):
            raise ValueError("duplicate terms")
        for t in self.terms:
            if t != PATH3 and t not in TRIAD_INDEX:
                raise ValueError(f"unknown term {t!r}")
        if self.targets is not None:
            targets = np.asarray(self.targets, dtype=np.int64)
            if targets.shape != (len(self.terms),):
                raise ValueError("targets must align with terms")
            if (targets < 0).any():
                raise ValueError("targets must be non-negative")
            object.__setattr__(self, "targets", targets)
        if self.weights is not None:
            weights = np.asarray(self.weights, dtype=np.float64)
            if weights.shape != (len(self.terms),):
                raise ValueError("weights must align with terms")
            object.__setattr__(self, "weights", weights)

    @property
    def has_path3(self) -> bool:
        return PATH3 in self.terms

    def triad_indices(self) -> np.ndarray:
        """Census indices of the triad terms, in term order (3path excluded)."""
        return np.array(
            [TRIAD_INDEX[t] for t in self.terms if t != PATH3], dtype=np.intp
        )


def term_names_for(spec: BlockmodelSpec, name: str) -> tuple[str, ...]:
    """Triad labels of a named subset, in canonical census order."""
    if name == "all":
        chosen = set(TRIAD_TYPES)
    else:
        cls = classify(spec)
        try:
            chosen = set(getattr(cls, name))
        except AttributeError:
            raise ValueError(
                f"unknown term set {name!r}, expected one of {TERM_SET_NAMES}"
            ) from None
    return tuple(t for t in TRIAD_TYPES if t in chosen)


def targets_from_ideal(
    spec: BlockmodelSpec, name: str, include_path3: bool = False
) -> TermSet:
    """TermSet with target counts taken from the spec's ideal network.

    Forbidden-type targets are zero by construction.  With include_path3 the
    3-trail count of the ideal network is appended as an extra target.
    """
    terms = term_names_for(spec, name)
    ideal = build_ideal(spec)
    counts = census_counts(ideal)
    targets = [int(counts[TRIAD_INDEX[t]]) for t in terms]
    if include_path3:
        terms = terms + (PATH3,)
        targets.append(count_3paths(ideal))
    return TermSet(terms=terms, targets=np.array(targets, dtype=np.int64))


def default_weights(
    spec: BlockmodelSpec,
    name: str,
    include_path3: bool = False,
    overrides: dict[str, float] | None = None,
) -> TermSet:
    """TermSet with +2 on allowed terms and -2 on forbidden terms.

    The 3-trail term, when included, defaults to -2 (treated as forbidden).
    `overrides` replaces individual weights and may introduce terms absent
    from the named subset.
    """
    terms = list(term_names_for(spec, name))
    allowed = classify(spec).allowed
    weight_of = {t: (2.0 if t in allowed else -2.0) for t in terms}
    if include_path3:
        weight_of[PATH3] = -2.0
    for t, w in (overrides or {}).items():
        if t != PATH3 and t not in TRIAD_INDEX:
            raise ValueError(f"unknown term {t!r} in overrides")
        weight_of[t] = float(w)
    ordered = [t for t in TRIAD_TYPES if t in weight_of]
    if PATH3 in weight_of:
        ordered.append(PATH3)
    return TermSet(
        terms=tuple(ordered),
        weights=np.array([weight_of[t] for t in ordered], dtype=np.float64),
    )


def hierarchy_fix_weights(spec: BlockmodelSpec) -> TermSet:
    """The repaired model for hierarchies without complete diagonal blocks:
    selected triads at +/-2, the 3-trail count at -2, and 021C raised to +4.
    """
    if spec.kind != "hierarchical_nodiag":
        raise ValueError("the hierarchy fix applies to hierarchical_nodiag only")
    return default_weights(
        spec, "selected", include_path3=True, overrides={"021C": 4.0}
    )


def stat_vector(g: DirectedGraph, term_set: TermSet) -> np.ndarray:
    """Current values of the term statistics, aligned with term order."""
    counts = census_counts(g)
    values = []
    for t in term_set.terms:
        if t == PATH3:
            values.append(count_3paths(g))
        else:
            values.append(int(counts[TRIAD_INDEX[t]]))
    return np.array(values, dtype=np.int64)
