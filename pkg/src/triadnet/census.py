"""Triad census of directed graphs: full, incremental, and 3-trail counting.

The 16 triad isomorphism classes carry the standard three-digit labels
(mutual, asymmetric, null dyad counts) with C/T/U/D orientation letters.
Triples are classified through a 64-entry lookup keyed on the 6 arc bits of
an ordered triple, built at import time from canonical exemplars by
canonicalizing over the 6 node orderings.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .graph import DirectedGraph

__all__ = [
    "TRIAD_TYPES",
    "TRIAD_INDEX",
    "TriadCensus",
    "CensusDelta",
    "triad_census",
    "census_counts",
    "census_delta",
    "delta_counts",
    "count_3paths",
]

TRIAD_TYPES = (
    "003", "012", "102", "021D", "021U", "021C", "111D", "111U",
    "030T", "030C", "201", "120D", "120U", "120C", "210", "300",
)

TRIAD_INDEX = {name: k for k, name in enumerate(TRIAD_TYPES)}

# One labeled representative per class, on nodes (0, 1, 2).
_EXEMPLARS = {
    "003": (),
    "012": ((0, 1),),
    "102": ((0, 1), (1, 0)),
    "021D": ((1, 0), (1, 2)),                    # common source
    "021U": ((0, 1), (2, 1)),                    # common target
    "021C": ((0, 1), (1, 2)),                    # two-step path
    "111D": ((0, 1), (1, 0), (2, 1)),            # arc into the mutual pair
    "111U": ((0, 1), (1, 0), (1, 2)),            # arc out of the mutual pair
    "030T": ((0, 1), (2, 1), (0, 2)),            # transitive triangle
    "030C": ((1, 0), (2, 1), (0, 2)),            # cyclic triangle
    "201": ((0, 1), (1, 0), (0, 2), (2, 0)),
    "120D": ((1, 0), (1, 2), (0, 2), (2, 0)),    # outsider sends into the pair
    "120U": ((0, 1), (2, 1), (0, 2), (2, 0)),    # pair sends to the outsider
    "120C": ((0, 1), (1, 2), (0, 2), (2, 0)),
    "210": ((0, 1), (1, 2), (2, 1), (0, 2), (2, 0)),
    "300": ((0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)),
}

# Bit position of each ordered arc within a triple (x, y, z).
_ARC_BITS = {(0, 1): 1, (1, 0): 2, (0, 2): 4, (2, 0): 8, (1, 2): 16, (2, 1): 32}


def _encode(arcs) -> int:
    return sum(_ARC_BITS[arc] for arc in arcs)


def _canonical(code: int) -> int:
    arcs = [arc for arc, bit in _ARC_BITS.items() if code & bit]
    best = 63
    for perm in permutations(range(3)):
        relabeled = _encode((perm[i], perm[j]) for i, j in arcs)
        best = min(best, relabeled)
    return best


def _build_code_table() -> np.ndarray:
    canon_to_type = {_canonical(_encode(arcs)): TRIAD_INDEX[name]
                     for name, arcs in _EXEMPLARS.items()}
    table = np.empty(64, dtype=np.intp)
    for code in range(64):
        table[code] = canon_to_type[_canonical(code)]
    return table


#: Triad type index for each of the 64 arc-bit patterns of an ordered triple.
CODE_TO_TYPE = _build_code_table()

# Census change caused by toggling the first arc bit of a triple, given the
# triple's code before the toggle.  Row = one-hot(after) - one-hot(before).
_ADD_DELTA = np.zeros((64, 16), dtype=np.int64)
_REMOVE_DELTA = np.zeros((64, 16), dtype=np.int64)
for _code in range(64):
    if _code & 1:
        _REMOVE_DELTA[_code, CODE_TO_TYPE[_code - 1]] += 1
        _REMOVE_DELTA[_code, CODE_TO_TYPE[_code]] -= 1
    else:
        _ADD_DELTA[_code, CODE_TO_TYPE[_code + 1]] += 1
        _ADD_DELTA[_code, CODE_TO_TYPE[_code]] -= 1


@lru_cache(maxsize=None)
def _triples(n: int):
    idx = np.array(list(combinations(range(n), 3)), dtype=np.intp)
    return idx[:, 0], idx[:, 1], idx[:, 2]


@dataclass(frozen=True)
class TriadCensus:
    """Counts of the 16 triad types over all unordered triples."""

    counts: np.ndarray  # shape (16,), aligned with TRIAD_TYPES

    def __getitem__(self, triad_type: str) -> int:
        return int(self.counts[TRIAD_INDEX[triad_type]])

    def to_dict(self) -> dict[str, int]:
        return {name: int(c) for name, c in zip(TRIAD_TYPES, self.counts)}

    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class CensusDelta:
    """Signed census change of a single arc toggle; entries sum to zero."""

    deltas: np.ndarray  # shape (16,), aligned with TRIAD_TYPES

    def __getitem__(self, triad_type: str) -> int:
        return int(self.deltas[TRIAD_INDEX[triad_type]])

    def to_dict(self) -> dict[str, int]:
        return {name: int(d) for name, d in zip(TRIAD_TYPES, self.deltas)}


def census_counts(g: DirectedGraph) -> np.ndarray:
    """Raw (16,) count vector; the fast path used by the generators."""
    n = g.n
    if n < 3:
        raise ValueError("triad census requires n >= 3")
    i, j, k = _triples(n)
    a = g.a
    codes = (
        a[i, j].astype(np.intp)
        + 2 * a[j, i]
        + 4 * a[i, k]
        + 8 * a[k, i]
        + 16 * a[j, k]
        + 32 * a[k, j]
    )
    return np.bincount(CODE_TO_TYPE[codes], minlength=16)


def triad_census(g: DirectedGraph) -> TriadCensus:
    """Exact counts of all 16 triad types; counts sum to C(n, 3)."""
    return TriadCensus(census_counts(g))


def _dyad_codes(a: np.ndarray, i: int, j: int) -> np.ndarray:
    """Triple codes of every {i, j, w}, with (i, j) on the low bit.

    The entries at w = i and w = j are meaningless and must be discounted
    by the caller (cheaper than masking them out here).
    """
    base = int(a[i, j]) + 2 * int(a[j, i])
    return (
        base
        + 4 * a[i, :].astype(np.intp)
        + 8 * a[:, i]
        + 16 * a[j, :]
        + 32 * a[:, j]
    )


def _delta_raw(a: np.ndarray, i: int, j: int, add: bool) -> np.ndarray:
    """Unchecked (16,) census change of toggling (i, j) on a raw matrix.

    Scans only the n - 2 triples containing both endpoints, with (i, j)
    mapped to the low bit of the triple code.
    """
    codes = _dyad_codes(a, i, j)
    by_code = np.bincount(codes, minlength=64)
    by_code[codes[i]] -= 1
    by_code[codes[j]] -= 1
    return by_code @ (_ADD_DELTA if add else _REMOVE_DELTA)


def delta_counts(g: DirectedGraph, i: int, j: int, add: bool) -> np.ndarray:
    """Raw (16,) census change of toggling arc (i, j); scans n - 2 triples."""
    if i == j:
        raise ValueError("self-links are not allowed")
    if g.n < 3:
        raise ValueError("census delta requires n >= 3")
    if add and g.a[i, j]:
        raise ValueError(f"cannot add arc {i}->{j}: already present")
    if not add and not g.a[i, j]:
        raise ValueError(f"cannot remove arc {i}->{j}: not present")
    return _delta_raw(g.a, i, j, add)


def census_delta(g: DirectedGraph, i: int, j: int, add: bool) -> CensusDelta:
    """Census change of toggling arc (i, j) without applying the toggle."""
    return CensusDelta(delta_counts(g, i, j, add))


def count_3paths(g: DirectedGraph) -> int:
    """Number of directed 3-trails: arc sequences (a->b, b->c, c->d) with the
    three arcs pairwise distinct.  Nodes may repeat, so this equals the number
    of length-3 walks minus the a->b->a->b walks on mutual dyads.
    """
    a = g.a.astype(np.int64)
    walks = int((a @ a @ a).sum())
    mutual_ordered = int((a * a.T).sum())
    return walks - mutual_ordered
