"""Generate directed networks with a prescribed blockmodel structure from
triad-level local statistics, and evaluate them against the ideal structure."""

from .blockmodel import (
    KINDS,
    BlockmodelSpec,
    Partition,
    build_ideal,
    canonical_partition,
    perturb,
    randomize_total,
    relocation_count,
    uniform_random_graph,
)
from .census import (
    TRIAD_TYPES,
    CensusDelta,
    TriadCensus,
    census_delta,
    count_3paths,
    triad_census,
)
from .fit import FitResult, ImprovementResult, criterion, fit_prespecified, mean_improvement
from .graph import DirectedGraph, read_arclist, read_matrix, write_arclist, write_matrix
from .harness import CellReport, ExperimentConfig, load_config, run_experiment
from .measures import (
    EnrichmentReport,
    TriadClassification,
    classify,
    enrichment,
    enrichment_profile,
    write_enrichment_csv,
)
from .relocate import SearchTrace, deviation, rl_generate
from .sampler import (
    CalibrationError,
    SamplerConfig,
    ScoreModel,
    calibrate_edge,
    is_degenerate,
    log_score_delta,
    mcmc_generate,
)
from .terms import PATH3, TermSet, default_weights, hierarchy_fix_weights, targets_from_ideal

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "PATH3",
    "TRIAD_TYPES",
    "BlockmodelSpec",
    "CalibrationError",
    "CellReport",
    "CensusDelta",
    "DirectedGraph",
    "EnrichmentReport",
    "ExperimentConfig",
    "FitResult",
    "ImprovementResult",
    "Partition",
    "SamplerConfig",
    "ScoreModel",
    "SearchTrace",
    "TermSet",
    "TriadCensus",
    "TriadClassification",
    "build_ideal",
    "calibrate_edge",
    "canonical_partition",
    "census_delta",
    "classify",
    "count_3paths",
    "criterion",
    "default_weights",
    "deviation",
    "enrichment",
    "enrichment_profile",
    "fit_prespecified",
    "hierarchy_fix_weights",
    "is_degenerate",
    "load_config",
    "log_score_delta",
    "mcmc_generate",
    "mean_improvement",
    "perturb",
    "randomize_total",
    "read_arclist",
    "read_matrix",
    "relocation_count",
    "rl_generate",
    "run_experiment",
    "targets_from_ideal",
    "triad_census",
    "uniform_random_graph",
    "write_arclist",
    "write_enrichment_csv",
    "write_matrix",
]
