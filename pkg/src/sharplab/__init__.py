"""sharplab: numerical laboratory for sharp Trudinger-Moser and Adams inequalities.

Evaluates the critical/subcritical exponential functionals on radial
profiles, reproduces the classical extremizing sequences and their exact
scaling identities, estimates the suprema by constrained extremal search,
and verifies the asymptotic growth laws and the critical/subcritical
equivalence identities at desk scale.
"""

from .constants import (
    SeriesKind,
    alpha_moser,
    beta0_fractional,
    beta_adams,
    log_phi,
    phi,
    phi_small_t_leading,
    sphere_area,
)
from .functionals import (
    adams_functional,
    at_objective,
    ata_objective,
    gradient_norm,
    laplacian_norm,
    lebesgue_norm,
    levelset_volume,
    tm_functional,
)
from .profiles import (
    FunctionalParams,
    ParametricProfile,
    RadialGrid,
    RadialProfile,
    profile_from_text,
    profile_to_text,
    read_profile,
    write_profile,
)
from .sequences import (
    AdamsPsiSpec,
    AdamsQuadraticSpec,
    MoserSequenceSpec,
    adams_matched_cap_profile,
    adams_psi_profile,
    adams_quadratic_profile,
    at_lower_bound,
    ata_lower_bound,
    moser_profile,
    smooth_cap,
)
from .scaling import (
    NormBudget,
    TransformReport,
    critical_to_seminorm_adams,
    critical_to_seminorm_tm,
    fractional_scaling_check,
    normalize_adams,
    normalize_tm,
    subcritical_from_critical_adams,
    subcritical_from_critical_tm,
)
from .search import (
    SearchConfig,
    SupremumEstimate,
    SweepRecord,
    adams_equivalence_factor,
    estimate_a,
    estimate_at,
    estimate_ata,
    estimate_mt,
    identity_sweep,
    rate_fit,
    tm_equivalence_factor,
)

__version__ = "0.1.0"
