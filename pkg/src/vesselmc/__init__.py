"""Monte Carlo burst-failure probability of unflawed thin-walled cylindrical pressure vessels."""

from .analysis import (
    SensitivityResult,
    SweepResult,
    VariableId,
    cov,
    sensitivity,
    sensitivity_all,
    sweep_std,
    sweep_std_all,
)
from .config import ConfigError, StudyConfig, load_config, parse_config, table2_path
from .criteria import (
    BurstResult,
    Criterion,
    InvalidReason,
    burst_at_means,
    burst_pressure,
    strain_hardening_exponent,
)
from .engine import EstimateResult, RunConfig, estimate_all, estimate_pof, indicator, limit_state
from .stochastic import (
    DesignSample,
    NormalVariable,
    RngStream,
    VesselModel,
    sample_design,
    sample_normal,
    standard_normal_cdf,
    standard_normal_quantile,
)

__version__ = "0.1.0"
