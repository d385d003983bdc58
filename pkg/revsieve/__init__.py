__version__ = "0.1.0"
__license__ = "MIT"

# Core exports
from .core.config import OutputFormat, RunConfig, Settings, SieveConfig, Strategy, get_settings
from .core.digits import DigitContext, binary, bn_size, is_palindrome, mirror_congruence_check, reverse
from .core.engine import (
    SieveEngine,
    count_almost_prime_pairs,
    count_palindromic_primes,
    count_theta,
    count_theta_z,
    sieve_window,
)
from .core.errors import (
    AdvisoryError,
    ConsistencyError,
    DomainError,
    ResourceError,
    RevsieveError,
    VerificationError,
)
from .core.registry import ReferenceRegistry, reference_table
from .core.tables import CountMethod, CountRow, CountTable
from .core.window import SieveWindow, WindowKind

# Operations exports
from .operations.analytic import HeuristicRow, conjecture_series, li, theta_exp
from .operations.arith import (
    ArithSumRecord,
    SumMode,
    f_eval,
    h_brute,
    h_multiplicative,
    mu_z_omega_sum,
    r_n,
    r_tilde,
    sieve_error_sum,
    t_n,
    v_product,
)
from .operations.export import ExportOperations, export_rows
from .operations.expsum import (
    ExactRational,
    ExpSumPoint,
    MajorantParams,
    ProductFactors,
    Real,
    check_majorant,
    check_u_triple,
    decay_bound_report,
    fn_direct,
    fn_product_magnitude,
    gn_eval,
    gn_integral,
    large_norm_index,
    m_average,
    sobolev_gallagher_check,
)
from .operations.harness import LemmaReport, verify_lemmas
from .operations.squarefree import (
    count_q,
    count_q_tilde,
    heuristic_constant,
    sieve_squarefree,
)

# Serializers exports
from .serializers import JSONSerializer

__all__ = [
    # Metadata
    "__version__",
    "__license__",
    # Configuration
    "SieveConfig",
    "RunConfig",
    "Settings",
    "Strategy",
    "OutputFormat",
    "get_settings",
    # Errors
    "RevsieveError",
    "DomainError",
    "AdvisoryError",
    "ResourceError",
    "ConsistencyError",
    "VerificationError",
    # Digits
    "DigitContext",
    "binary",
    "bn_size",
    "reverse",
    "is_palindrome",
    "mirror_congruence_check",
    # Sieve engine
    "SieveEngine",
    "SieveWindow",
    "WindowKind",
    "sieve_window",
    "count_theta",
    "count_palindromic_primes",
    "count_theta_z",
    "count_almost_prime_pairs",
    # Tables
    "CountMethod",
    "CountRow",
    "CountTable",
    "ReferenceRegistry",
    "reference_table",
    # Squarefree
    "sieve_squarefree",
    "count_q",
    "count_q_tilde",
    "heuristic_constant",
    # Exponential sums
    "ExactRational",
    "Real",
    "ExpSumPoint",
    "ProductFactors",
    "MajorantParams",
    "fn_direct",
    "fn_product_magnitude",
    "gn_eval",
    "check_u_triple",
    "check_majorant",
    "decay_bound_report",
    "large_norm_index",
    "gn_integral",
    "sobolev_gallagher_check",
    "m_average",
    "LemmaReport",
    "verify_lemmas",
    # Arithmetic sums
    "ArithSumRecord",
    "SumMode",
    "f_eval",
    "v_product",
    "h_brute",
    "h_multiplicative",
    "t_n",
    "r_n",
    "r_tilde",
    "mu_z_omega_sum",
    "sieve_error_sum",
    # Analytic
    "HeuristicRow",
    "li",
    "theta_exp",
    "conjecture_series",
    # Output
    "ExportOperations",
    "export_rows",
    "JSONSerializer",
]
