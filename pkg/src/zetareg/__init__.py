"""Zeta regularization toolkit: Riemann zeta, the prime zeta function and spectral determinants."""
from .errors import (AccuracyError, ConditioningError, DomainError, PoleError, RangeError,
                     SingularityError, VerdictError, ZetaRegError)
from .numtheory import (NumberTables, build_tables, is_square_free, log_integral, moebius,
                        pnt_table, prime_count)
from .primezeta import (PrimeZetaValue, SingularityCatalog, Window, ln_zeta_expansion_check,
                        prime_zeta_continued, prime_zeta_derivative, prime_zeta_direct,
                        singularity_catalog, strip_scan)
from .spectral import (CutoffFit, Explicit, NotRegularizable, OperatorSpectrum, PowerLaw, Primes,
                       Regularized, cutoff_energy, cutoff_fit, regularized_log_det, scaling_check,
                       spectral_zeta)
from .riemann import (ZerosTable, ZetaEngineConfig, euler_product, find_zeros, jacobi_theta1,
                   xi, zeta, zeta_continued, zeta_derivative, zeta_dirichlet)
from .gamma import log_gamma

__version__ = "0.1.0"
