"""Quality estimation from pairwise comparisons and the graph resistances that govern its error."""

__version__ = "0.1.0"

from .btl import (
    ComparisonTally,
    FrequencyVector,
    WeightVector,
    bernoulli_variance_scale,
    chernoff_deviation_bound,
    empirical_frequencies,
    log_ratios,
    sample_weights,
    simulate_comparisons,
    win_probability,
)
from .estimator import BoundReport, Estimate, d_error, estimate_weights, sin_error, theorem1_bound
from .experiment import (
    ExperimentConfig,
    ExperimentResult,
    emit_csv,
    emit_svg,
    fit_loglog_slope,
    reference_configs,
    run_experiment,
    run_trial,
)
from .generators import FamilySpec, generate, generate_connected
from .graph import (
    EdgeSet,
    Graph,
    build_graph,
    incidence_matrix,
    is_connected,
    laplacian,
    path_edge_set,
)
from .resistance import (
    ResistanceSummary,
    SolveReport,
    dense_pinv_oracle,
    effective_resistance,
    electrical_flow,
    resistance_summary,
    solve_laplacian,
)
