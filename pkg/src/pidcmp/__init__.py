"""Partial information decomposition of trivariate neural input-output data.

The package builds discrete joint distributions over (output Y, basal input
B, apical input A) from trial or grid CSV data, computes classical Shannon
measures, and decomposes I(Y;B,A) into unique, shared, and synergistic parts
with five methods: ibroja (constrained minimization of the joint mutual
information), idep (dependency-lattice edge increments), and the pointwise
iccs, ipm, and isx. Batch analyses compare conditions within units, sweep
input-range cells, and classify cooperative context-sensitivity; the pidcmp
command line wraps them.
"""

from .analysis import (
    CcsThresholds,
    CcsVerdict,
    ConditionsConfig,
    SweepSpec,
    classify_ccs,
    emit_report,
    parse_range,
    parse_ranges,
    range_label,
    run_ccs,
    run_conditions,
    run_sweep,
)
from .broja import BrojaConfig, SolverReport, minimize_joint_mi, pid_broja
from .components import (
    COMPONENT_NAMES,
    METHOD_TOLERANCE,
    METHODS,
    ConsistencyResiduals,
    PidComponents,
    consistency_residuals,
    from_shared,
    from_uniques,
    normalize_components,
    synergy_lower_bound,
    unique_info_asymmetry,
)
from .dependency import PAIRWISE, ConstraintSet, DependencyLattice, maxent_fit, pid_dep
from .distributions import (
    CONDITIONS,
    GRID_HEADER,
    TRIALS_HEADER,
    Alphabet,
    BinningConfig,
    CountRange,
    GridRecord,
    JointDistribution,
    TrialRecord,
    bin_quantile,
    build_joint,
    categorize_output,
    ingest_grid,
    ingest_trials,
    marginal,
    match_support,
    parse_output_categories,
    read_grid_csv,
    read_trials_csv,
)
from .exceptions import ConvergenceError
from .measures import (
    InfoSummary,
    LocalTerm,
    conditional_mi,
    entropy,
    interaction_information,
    joint_mi,
    local_mi,
    mutual_information,
    normalize_summary,
    summarize,
)
from .methods import decompose
from .pointwise import LEDGER_HEADER, PointwiseLedger, pid_ccs, pid_pm, pid_sx
from .stats import PairedSample, bonferroni, median_quartiles, wilcoxon_exact

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BinningConfig",
    "BrojaConfig",
    "CcsThresholds",
    "CcsVerdict",
    "COMPONENT_NAMES",
    "CONDITIONS",
    "ConditionsConfig",
    "ConsistencyResiduals",
    "ConstraintSet",
    "ConvergenceError",
    "CountRange",
    "DependencyLattice",
    "GRID_HEADER",
    "GridRecord",
    "InfoSummary",
    "JointDistribution",
    "LEDGER_HEADER",
    "LocalTerm",
    "METHOD_TOLERANCE",
    "METHODS",
    "PAIRWISE",
    "PairedSample",
    "PidComponents",
    "PointwiseLedger",
    "SolverReport",
    "SweepSpec",
    "TRIALS_HEADER",
    "TrialRecord",
    "bin_quantile",
    "bonferroni",
    "build_joint",
    "categorize_output",
    "classify_ccs",
    "conditional_mi",
    "consistency_residuals",
    "decompose",
    "emit_report",
    "entropy",
    "from_shared",
    "from_uniques",
    "ingest_grid",
    "ingest_trials",
    "interaction_information",
    "joint_mi",
    "local_mi",
    "marginal",
    "match_support",
    "maxent_fit",
    "median_quartiles",
    "minimize_joint_mi",
    "mutual_information",
    "normalize_components",
    "normalize_summary",
    "parse_output_categories",
    "parse_range",
    "parse_ranges",
    "pid_broja",
    "pid_ccs",
    "pid_dep",
    "pid_pm",
    "pid_sx",
    "range_label",
    "read_grid_csv",
    "read_trials_csv",
    "run_ccs",
    "run_conditions",
    "run_sweep",
    "summarize",
    "synergy_lower_bound",
    "unique_info_asymmetry",
    "wilcoxon_exact",
]
