"""SINR distributions of cellular networks with non-Poisson base stations.

Monte Carlo estimation of success probabilities, asymptotic outage
behaviour and the asymptotic deployment gain (ADG) relative to the
analytically tractable Poisson baseline.
"""

from .errors import (
    AdglabError,
    BinStarved,
    EmptyPattern,
    InsufficientPoints,
    NoPolynomialDecay,
    OutOfRange,
    QuadratureFailure,
    SingularAtZero,
    SingularMeanDiverges,
    WindowTooSmall,
)
from .gains import (
    AdgEstimate,
    adg_from_kappa,
    adg_horizontal_shift,
    adg_table_to_csv,
    deployment_gain,
    ergodic_rate_from_adg,
    ergodic_rate_mc,
    mean_sinr_mc,
    outage_slope,
)
from .geometry import Window, nearest_point, torus_distance
from .point_process import (
    MaternCluster,
    MaternHardCore,
    PointPattern,
    Poisson,
    ProcessModel,
    TriangularLattice,
    empirical_contact_ccdf,
    intensity_of,
    mcp_contact_ccdf_upper_bound,
    pattern_to_csv,
    ppp_contact_ccdf,
    sample,
    sample_contact_distances,
)
from .ppp import invert_success, kappa_ppp_general, kappa_ppp_rayleigh, ppp_success_rayleigh
from .propagation import (
    RAYLEIGH,
    Composite,
    FadingModel,
    LogNormal,
    Nakagami,
    PathLoss,
    SmallTCoefficient,
    fading_cdf,
    fading_mean,
    path_loss,
    sample_fading,
    small_t_coefficient,
)
from .sinr import (
    Scenario,
    SinrBatch,
    SinrSample,
    SuccessCurve,
    curve_to_csv,
    default_theta_db_grid,
    draw_batch,
    estimate_kappa,
    estimate_success_curve,
    interference_moment,
    interference_tail_ccdf,
    noise_from_mean_snr_db,
    sample_sinr,
    sinr_at,
)

__version__ = "0.1.0"
