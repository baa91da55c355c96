"""One-parameter supersymmetric deformations of the momentum-space
linear-potential partner pair, with independent numerical verification."""

from .logscale import LogScaledValue
from .quadrature import (CumulativeIntegral, QuadratureError, cumulative,
                         integrate, integrate_semiinfinite)
from .specfun import SpecFunError, expint_E, gamma_fn, upper_gamma
from .susy import (DeformationParameter, Family, GammaStatus, GridFunction,
                   NonNormalizableError, PotentialKind, SingularityError,
                   Superpotential, SuperpotentialKind, ZeroMode,
                   bending_critical_p, delta_potential, gamma1, gamma2,
                   gamma2_inf, mu, potential, potential_deformed,
                   validate_gamma, w0, w_deformed, zeromode)
from .oracle import (BlowUpError, BoundaryKind, BoundarySpec, CheckResult,
                     VerificationReport, apply_hamiltonian,
                     intertwine_residual, lowest_eigenvalue, riccati_ode,
                     zero_mode_residual)
from .verify import run_suite

__version__ = "0.1.0"
