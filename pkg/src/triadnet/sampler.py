"""Metropolis-Hastings sampling of networks under an exponential-family score.

The score of a network is the weighted sum of its term statistics plus, in
free-density mode, an edge weight times the arc count.  Fixed-density mode
proposes arc relocations (one random arc to one random free slot); free
mode proposes single-dyad toggles.  Both kernels are symmetric, so moves
are accepted with probability min(1, exp(score delta)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rng import IntStream, UniformStream
from .blockmodel import BlockmodelSpec, build_ideal, randomize_total
from .census import CODE_TO_TYPE, TRIAD_INDEX, _delta_raw, _dyad_codes
from .graph import DirectedGraph
from .relocate import _trail3_raw
from .terms import PATH3, TermSet

__all__ = [
    "ScoreModel",
    "SamplerConfig",
    "CalibrationError",
    "log_score_delta",
    "mcmc_generate",
    "calibrate_edge",
    "is_degenerate",
    "sparse_random_init",
]


@dataclass(frozen=True)
class ScoreModel:
    """Term weights plus an optional edge weight for free-density sampling."""

    terms: TermSet
    edge_weight: float = 0.0
    density_fixed: bool = True

    def __post_init__(self):
        if self.terms.weights is None:
            raise ValueError("score model requires term weights")

    def with_edge_weight(self, w: float) -> "ScoreModel":
        return ScoreModel(self.terms, float(w), self.density_fixed)


@dataclass(frozen=True)
class SamplerConfig:
    steps: int
    init: DirectedGraph
    seed: int | None = None

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")


class CalibrationError(RuntimeError):
    """Edge-weight calibration failed; carries the probe diagnostics."""

    def __init__(self, message: str, probes: dict[float, float]):
        super().__init__(f"{message}; probes (edge weight -> mean density): {probes}")
        self.probes = probes


class _TermTracker:
    """Indices for reading term statistics out of a census vector."""

    __slots__ = ("triad_idx", "triad_pos", "path3_pos", "triad_weights", "path3_weight")

    def __init__(self, term_set: TermSet):
        idx, pos = [], []
        self.path3_pos = -1
        for p, t in enumerate(term_set.terms):
            if t == PATH3:
                self.path3_pos = p
            else:
                idx.append(TRIAD_INDEX[t])
                pos.append(p)
        self.triad_idx = np.array(idx, dtype=np.intp)
        self.triad_pos = np.array(pos, dtype=np.intp)
        if term_set.weights is not None:
            self.triad_weights = term_set.weights[self.triad_pos]
            self.path3_weight = (
                float(term_set.weights[self.path3_pos]) if self.path3_pos >= 0 else 0.0
            )

    @property
    def track_path3(self) -> bool:
        return self.path3_pos >= 0

    def score_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-code weighted score change of toggling a triple's low bit.

        score_add[c] (c even) and score_remove[c] (c odd) give the summed
        triad-weight change contributed by one triple whose code is c before
        the toggle; a dyad toggle's score is the sum over its n - 2 triples.
        """
        w16 = np.zeros(16, dtype=np.float64)
        w16[self.triad_idx] = self.triad_weights
        by_type = w16[CODE_TO_TYPE]
        codes = np.arange(64)
        score_add = np.zeros(64, dtype=np.float64)
        score_remove = np.zeros(64, dtype=np.float64)
        even = codes[::2]
        odd = codes[1::2]
        score_add[even] = by_type[even + 1] - by_type[even]
        score_remove[odd] = by_type[odd - 1] - by_type[odd]
        return score_add, score_remove


def _apply_toggle(a: np.ndarray, i: int, j: int) -> tuple[np.ndarray, bool]:
    """Toggle (i, j) in place; returns the census delta and whether it added."""
    add = a[i, j] == 0
    d16 = _delta_raw(a, i, j, add)
    a[i, j] = 1 if add else 0
    return d16, bool(add)


def log_score_delta(model: ScoreModel, g: DirectedGraph, move) -> float:
    """Score change of a proposed move, leaving the graph unchanged.

    Moves are ("add", i, j) / ("remove", i, j) in free-density mode and
    ("relocate", i, j, k, l) in fixed-density mode.
    """
    kind = move[0]
    tracker = _TermTracker(model.terms)
    a = g.a
    if kind in ("add", "remove"):
        if model.density_fixed:
            raise ValueError("toggle moves require a free-density model")
        _, i, j = move
        if i == j:
            raise ValueError("self-links are not allowed")
        want_add = kind == "add"
        if bool(a[i, j]) == want_add:
            raise ValueError(f"cannot {kind} arc {i}->{j} in its current state")
        p3_before = _trail3_raw(a) if tracker.track_path3 else 0
        d16, added = _apply_toggle(a, i, j)
        p3_after = _trail3_raw(a) if tracker.track_path3 else 0
        a[i, j] = 0 if added else 1  # restore
        delta = float(tracker.triad_weights @ d16[tracker.triad_idx])
        delta += tracker.path3_weight * (p3_after - p3_before)
        delta += model.edge_weight * (1 if added else -1)
        return delta
    if kind == "relocate":
        if not model.density_fixed:
            raise ValueError("relocation moves require a fixed-density model")
        _, i, j, k, l = move
        if not a[i, j]:
            raise ValueError(f"arc {i}->{j} not present")
        if k == l or a[k, l]:
            raise ValueError(f"slot {k}->{l} not free")
        p3_before = _trail3_raw(a) if tracker.track_path3 else 0
        d16 = _delta_raw(a, i, j, False)
        a[i, j] = 0
        d16 = d16 + _delta_raw(a, k, l, True)
        a[k, l] = 1
        p3_after = _trail3_raw(a) if tracker.track_path3 else 0
        a[k, l] = 0
        a[i, j] = 1  # restore
        delta = float(tracker.triad_weights @ d16[tracker.triad_idx])
        delta += tracker.path3_weight * (p3_after - p3_before)
        return delta
    raise ValueError(f"unknown move kind {kind!r}")


def mcmc_generate(
    model: ScoreModel,
    cfg: SamplerConfig,
    rng: np.random.Generator | None = None,
    observer=None,
) -> DirectedGraph:
    """Run the chain for cfg.steps proposals and return the final state.

    `observer(g)`, when given, is called on the live graph after every step;
    it must not mutate the graph.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    g = cfg.init.copy()
    a = g.a
    n = g.n
    if n < 3:
        raise ValueError("sampling requires n >= 3")
    tracker = _TermTracker(model.terms)
    score_add, score_remove = tracker.score_tables()
    w_path3 = tracker.path3_weight
    track_p3 = tracker.track_path3
    p3 = _trail3_raw(a) if track_p3 else 0
    edge_w = model.edge_weight
    uniforms = UniformStream(rng)

    if model.density_fixed:
        m = g.arc_count()
        free_total = n * n - n - m
        if m < 1 or free_total < 1:
            raise ValueError("fixed-density sampling needs >= 1 arc and >= 1 free slot")
        arcs = np.flatnonzero(a).astype(np.int64)
        free = np.flatnonzero(
            (a.ravel() == 0) & ~np.eye(n, dtype=bool).ravel()
        ).astype(np.int64)
        arc_draws = IntStream(rng, m)
        free_draws = IntStream(rng, free_total)
        for _ in range(cfg.steps):
            ai = arc_draws.next()
            fi = free_draws.next()
            src, dst = int(arcs[ai]), int(free[fi])
            i, j = divmod(src, n)
            k, l = divmod(dst, n)
            codes = _dyad_codes(a, i, j)
            logp = score_remove[codes].sum()
            logp -= score_remove[codes[i]] + score_remove[codes[j]]
            a[i, j] = 0
            codes = _dyad_codes(a, k, l)
            logp += score_add[codes].sum()
            logp -= score_add[codes[k]] + score_add[codes[l]]
            a[k, l] = 1
            if track_p3:
                p3_new = _trail3_raw(a)
                logp += w_path3 * (p3_new - p3)
            u = uniforms.next()
            if logp >= 0.0 or u < math.exp(logp):
                arcs[ai] = dst
                free[fi] = src
                if track_p3:
                    p3 = p3_new
            else:
                a[k, l] = 0
                a[i, j] = 1
            if observer is not None:
                observer(g)
    else:
        off_diag = np.flatnonzero(~np.eye(n, dtype=bool)).astype(np.int64)
        slot_draws = IntStream(rng, off_diag.size)
        for _ in range(cfg.steps):
            flat = int(off_diag[slot_draws.next()])
            i, j = divmod(flat, n)
            add = a[i, j] == 0
            codes = _dyad_codes(a, i, j)
            table = score_add if add else score_remove
            logp = table[codes].sum() - table[codes[i]] - table[codes[j]]
            logp += edge_w if add else -edge_w
            a[i, j] = 1 if add else 0
            if track_p3:
                p3_new = _trail3_raw(a)
                logp += w_path3 * (p3_new - p3)
            u = uniforms.next()
            if logp >= 0.0 or u < math.exp(logp):
                if track_p3:
                    p3 = p3_new
            else:
                a[i, j] = 0 if add else 1
            if observer is not None:
                observer(g)
    return g


def is_degenerate(g: DirectedGraph, low: float = 0.02, high: float = 0.98) -> bool:
    """Flag near-empty or near-complete states (free-density collapse)."""
    d = g.density()
    return d < low or d > high


def sparse_random_init(n: int, rng: np.random.Generator) -> DirectedGraph:
    """Bernoulli initial network with n arcs expected; prone to degeneracy,
    kept as the non-default alternative to a randomized ideal network."""
    p = n / (n * n - n)
    a = (rng.random((n, n)) < p).astype(np.uint8)
    np.fill_diagonal(a, 0)
    return DirectedGraph(a)


def _mean_final_density(
    model: ScoreModel,
    spec: BlockmodelSpec,
    chains: int,
    steps: int,
    seed_base: int,
) -> float:
    total = 0.0
    for c in range(chains):
        crng = np.random.default_rng([seed_base, c])
        init = randomize_total(spec, crng)
        out = mcmc_generate(model, SamplerConfig(steps=steps, init=init), crng)
        total += out.density()
    return total / chains


def calibrate_edge(
    model: ScoreModel,
    spec: BlockmodelSpec,
    batch: int = 30,
    rng: np.random.Generator | None = None,
    *,
    steps: int = 40_000,
    probe_chains: int = 5,
    probe_steps: int | None = None,
    search_limit: float = 18.0,
    search_step: float = 1.0,
    density_window: float = 0.05,
) -> float:
    """Find an edge weight whose generated networks match the ideal density.

    The acceptance rule is the density window: the mean density of `batch`
    runs of length `steps` within `density_window` of the ideal density.
    The search starts from the independent-dyad weight log(d / (1 - d)) and
    walks outward to the nearest window-satisfying weight, probing with
    fixed-seed chains.  Walking (rather than bisecting to the exact target)
    matters for near-degenerate models, whose density response is flat and
    then cliffs: the mildest admissible weight is the faithful choice and
    the cliff edge is not.  Probe chains default to the verification length
    because slow-mixing models calibrate wrongly from short probes.  Raises
    CalibrationError with the probe history when verification fails.
    """
    if model.density_fixed:
        raise ValueError("edge calibration applies to free-density models only")
    if rng is None:
        rng = np.random.default_rng()
    if probe_steps is None:
        probe_steps = steps
    probe_seed = int(rng.integers(2**62))
    verify_seed = int(rng.integers(2**62))
    target = build_ideal(spec).density()
    # Accept probes well inside the window so batch verification has slack
    # for Monte Carlo noise.
    probe_window = 0.4 * density_window
    probes: dict[float, float] = {}

    def f(w: float) -> float:
        d = _mean_final_density(
            model.with_edge_weight(w), spec, probe_chains, probe_steps, probe_seed
        )
        probes[round(w, 6)] = round(d, 6)
        return d

    w0 = math.log(target / (1.0 - target))

    def walk(start: float, direction: float) -> float | None:
        """First weight past `start` whose probe density is in-window."""
        w = start
        while abs(w - w0) < search_limit:
            prev = w
            w += direction * search_step
            f_w = f(w)
            if abs(f_w - target) <= probe_window:
                return w
            if (f_w - target) * direction > 0:
                # Overshot the window in one step (density cliff): narrow
                # the interval between the last two probes.
                lo, hi = sorted((prev, w))
                for _ in range(8):
                    mid = 0.5 * (lo + hi)
                    f_mid = f(mid)
                    if abs(f_mid - target) <= probe_window:
                        return mid
                    if f_mid < target:  # density responds upward in w
                        lo = mid
                    else:
                        hi = mid
                return None
        return None

    f0 = f(w0)
    if abs(f0 - target) <= probe_window:
        w = w0
    else:
        w = walk(w0, 1.0 if f0 < target else -1.0)
        if w is None:
            w = min(probes, key=lambda wp: abs(probes[wp] - target))

    # Verify with the full batch; on failure feed the verified mean back in
    # and keep walking, since few-chain probes of slow-mixing models are
    # noisy near the window boundary.
    last = None
    for _ in range(3):
        mean_d = _mean_final_density(
            model.with_edge_weight(w), spec, batch, steps, verify_seed
        )
        if abs(mean_d - target) <= density_window:
            return w
        last = (w, mean_d)
        probes[round(w, 6)] = round(mean_d, 6)
        direction = 1.0 if mean_d < target else -1.0
        nxt = walk(w, direction)
        if nxt is None or abs(nxt - w) < 1e-9:
            nxt = w + direction * search_step
        w = nxt
    raise CalibrationError(
        f"calibrated weight {last[0]:.4f} gives mean density {last[1]:.4f}, "
        f"outside {target:.4f} +/- {density_window}",
        probes,
    )
