"""Greedy arc-relocation search toward target local-statistic counts.

Each step moves one random arc to one random free slot and keeps the move
only if the squared deviation of the tracked statistics from their targets
strictly decreases.  Density is preserved exactly; the accepted-state
deviation sequence is strictly decreasing.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from ._rng import IntStream
from .census import TRIAD_INDEX, _delta_raw, census_counts
from .graph import DirectedGraph
from .terms import PATH3, TermSet

__all__ = ["SearchTrace", "deviation", "rl_generate"]


def deviation(values, targets) -> float:
    """Sum of squared componentwise differences."""
    v = np.asarray(values, dtype=np.float64)
    t = np.asarray(targets, dtype=np.float64)
    if v.shape != t.shape:
        raise ValueError(f"length mismatch: {v.shape} vs {t.shape}")
    return float(((v - t) ** 2).sum())


def _trail3_raw(a: np.ndarray) -> int:
    """3-trail count of a raw matrix via an O(n^2) degree contraction."""
    indeg = a.sum(axis=0, dtype=np.int64)
    outdeg = a.sum(axis=1, dtype=np.int64)
    walks = int(indeg @ (a @ outdeg))
    return walks - int((a & a.T).sum())


@dataclass(frozen=True)
class SearchTrace:
    """Per-iteration deviation (after the accept/reject decision) and flag."""

    deviations: np.ndarray  # int64, one entry per executed iteration
    accepted: np.ndarray    # bool, aligned with deviations
    initial_deviation: int
    early_stop_iteration: int | None = None

    def iterations_run(self) -> int:
        return len(self.deviations)

    def accepted_deviations(self) -> np.ndarray:
        return self.deviations[self.accepted]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iteration", "deviation", "accepted"])
            for it, (dev, acc) in enumerate(zip(self.deviations, self.accepted)):
                writer.writerow([it, int(dev), int(acc)])


def rl_generate(
    term_set: TermSet,
    init: DirectedGraph,
    iterations: int,
    rng: np.random.Generator,
) -> tuple[DirectedGraph, SearchTrace]:
    """Run the relocation search; returns the final network and its trace.

    Requires term_set.targets.  The search stops early once the deviation
    reaches zero; remaining iterations are skipped and recorded in the trace.
    """
    if term_set.targets is None:
        raise ValueError("term_set must carry target counts")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    n = init.n
    if n < 3:
        raise ValueError("relocation search requires n >= 3")
    m = init.arc_count()
    free_total = n * n - n - m
    if m < 1 or free_total < 1:
        raise ValueError("initial network needs at least one arc and one free slot")

    g = init.copy()
    a = g.a
    counts16 = census_counts(g).astype(np.int64)
    targets = term_set.targets

    triad_idx, triad_pos = [], []
    path3_pos = -1
    for pos, t in enumerate(term_set.terms):
        if t == PATH3:
            path3_pos = pos
        else:
            triad_idx.append(TRIAD_INDEX[t])
            triad_pos.append(pos)
    triad_idx = np.array(triad_idx, dtype=np.intp)
    triad_pos = np.array(triad_pos, dtype=np.intp)
    track_path3 = path3_pos >= 0

    stats = np.zeros(len(term_set.terms), dtype=np.int64)
    stats[triad_pos] = counts16[triad_idx]
    if track_path3:
        stats[path3_pos] = _trail3_raw(a)
    diff = stats - targets
    dev = int(diff @ diff)
    initial_dev = dev

    # Flat-index pools of arcs and free off-diagonal slots; a relocation
    # swaps one entry between them, so sizes stay fixed.
    arcs = np.flatnonzero(a).astype(np.int64)
    free = np.flatnonzero((a.ravel() == 0) & ~np.eye(n, dtype=bool).ravel()).astype(np.int64)

    dev_trace = np.empty(iterations, dtype=np.int64)
    acc_trace = np.zeros(iterations, dtype=bool)
    early_stop = None
    arc_draws = IntStream(rng, m)
    free_draws = IntStream(rng, free_total)

    for it in range(iterations):
        if dev == 0:
            early_stop = it
            break
        ai = arc_draws.next()
        fi = free_draws.next()
        src = int(arcs[ai])
        dst = int(free[fi])
        i, j = divmod(src, n)
        k, l = divmod(dst, n)

        d16 = _delta_raw(a, i, j, False)
        a[i, j] = 0
        d16 = d16 + _delta_raw(a, k, l, True)
        a[k, l] = 1

        new_stats = stats.copy()
        new_stats[triad_pos] += d16[triad_idx]
        if track_path3:
            new_stats[path3_pos] = _trail3_raw(a)
        diff = new_stats - targets
        new_dev = int(diff @ diff)

        if new_dev < dev:
            counts16 += d16
            stats = new_stats
            dev = new_dev
            arcs[ai] = dst
            free[fi] = src
            acc_trace[it] = True
        else:
            a[k, l] = 0
            a[i, j] = 1
        dev_trace[it] = dev

    ran = iterations if early_stop is None else early_stop
    trace = SearchTrace(
        deviations=dev_trace[:ran],
        accepted=acc_trace[:ran],
        initial_deviation=initial_dev,
        early_stop_iteration=early_stop,
    )
    return g, trace
