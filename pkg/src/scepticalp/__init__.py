"""Sceptical p-values, reverse-Bayes credibility and replication design."""
from .credibility import (
    ConfidenceInterval,
    CredibilityResult,
    StudySummary,
    box_assessment,
    replication_success_at_level,
    sceptical_prior_variance,
    scepticism_limit,
)
from .dataset import analyze_dataset, analyze_row, fisher_z, read_rows_csv, RawStudyRow
from .design import (
    DesignPrior,
    DesignQuery,
    SampleSizeResult,
    Target,
    power,
    power_replication_success,
    power_significance,
    required_relative_sample_size,
    success_threshold,
)
from .exceptions import (
    DomainError,
    InvalidRowError,
    NotAchievableError,
    NotSignificantError,
    ScepticalError,
)
from .nullsim import NullSimConfig, density_p_ic, null_tail_bound, simulate_null
from .sceptical import (
    ScepticalOutcome,
    TestPair,
    intrinsic_credibility_p,
    intrinsic_threshold,
    matthews_limit_z_sq,
    sceptical_analysis,
    sceptical_p_one_sided,
    sceptical_p_two_sided,
    z_s_squared,
)

__version__ = "0.1.0"
