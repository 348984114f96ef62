"""High-precision verification of an evaluation formula for zeta(2,...,2,3,2,...,2)
and the 3F2 / digamma identities behind it."""
from .campaign import IDENTITIES, CampaignConfig, run_campaign, summarize
from .errors import (
    ConfigError,
    DivergenceError,
    IdentityError,
    InadmissibleComposition,
    PoleError,
    PreconditionError,
    RangeError,
    SlowConvergence,
)
from .hyper import (
    P3F2Params,
    d3f2_dz_at0,
    eq4_rhs,
    eq5_rhs,
    eq8_rhs,
    f32_unit,
    lgra_rhs,
    pochhammer,
)
from .mzv import (
    Composition,
    ZagierIndex,
    h_lhs,
    mzv,
    mzv_direct,
    zeta_int,
    zeta_two_block,
)
from .numerics import (
    BigRational,
    PrecisionContext,
    bernoulli,
    binomial,
    const_euler_gamma,
    const_log2,
    const_pi,
    sin_pi,
)
from .report import CheckReport
from .special import check_duplication, check_reflection, digamma, gamma, loggamma
from .zagier import (
    GFPoint,
    c_coeff,
    check_eq2,
    check_eq3,
    check_eq6,
    check_eq7,
    check_eq9,
    check_zagier,
    eq2_rhs,
    eq3_rhs,
    eq7_rhs,
    eq9_rhs,
    f_gen,
    f_hat_gen,
    h_rhs,
)

__version__ = "0.1.0"
