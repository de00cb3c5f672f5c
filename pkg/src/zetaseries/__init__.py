"""zetaseries: arbitrary-precision rational zeta series toolkit.

Computes the special functions behind rational zeta series (zeta and
Hurwitz zeta with s-derivatives, Dirichlet beta, Clausen functions,
log-gamma and negapolygammas) and mechanically verifies, to a
configurable number of digits, a catalog of series identities and
integral theorems, reporting digits of agreement.
"""

from .closedform import Atom, ClosedForm, Monomial, log_term
from .families import (
    FAMILIES,
    IdentityInstance,
    SeriesSpec,
    catalog_enumerate,
    lhs_spec,
    lhs_sum,
    make_instance,
    rhs_closed_form,
)
from .integrals import IntegralCheck, integral_lhs_quadrature, integral_rhs
from .numcore import BigRational, PrecisionContext, bernoulli, constant, harmonic
from .specfun import (
    DomainError,
    clausen,
    clausen_oracle,
    dirichlet_beta,
    hurwitz_zeta,
    hurwitz_zeta_sderiv,
    log_gamma,
    negapolygamma,
    negapolygamma_oracle,
    zeta_even,
    zeta_int,
)
from .verify import (
    AdjudicationRecord,
    VerificationReport,
    adjudicate_reading,
    default_suite_config,
    run_suite,
    verify_identity,
    verify_integral,
)

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "ClosedForm",
    "Monomial",
    "log_term",
    "FAMILIES",
    "IdentityInstance",
    "SeriesSpec",
    "catalog_enumerate",
    "lhs_spec",
    "lhs_sum",
    "make_instance",
    "rhs_closed_form",
    "IntegralCheck",
    "integral_lhs_quadrature",
    "integral_rhs",
    "BigRational",
    "PrecisionContext",
    "bernoulli",
    "constant",
    "harmonic",
    "DomainError",
    "clausen",
    "clausen_oracle",
    "dirichlet_beta",
    "hurwitz_zeta",
    "hurwitz_zeta_sderiv",
    "log_gamma",
    "negapolygamma",
    "negapolygamma_oracle",
    "zeta_even",
    "zeta_int",
    "AdjudicationRecord",
    "VerificationReport",
    "adjudicate_reading",
    "default_suite_config",
    "run_suite",
    "verify_identity",
    "verify_integral",
    "__version__",
]
