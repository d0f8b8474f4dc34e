"""Eigenvalues of Laplacians on spherical shells with a Robin inner boundary.

Neumann on the outer sphere, Robin (``dv/dn + h v = 0``, ``h = inf`` meaning
Dirichlet) on the inner one.
"""
from .errors import (AmbiguousClassificationError, ConvergenceError, CrossValidationError,
                     DegenerateError, DomainError, InvalidParameterError, MeasureMismatchError,
                     NotFoundError, RobinShellError)
from .radial_sl import (DIRICHLET, ModeProblem, ProfileClass, RadialEigenpair, ShellGeometry,
                        classify_profile, count_eigenvalues_below, rayleigh_quotient,
                        sl_eigenfunction, sl_eigenvalue, tau_h_derivative)
from .shell_spectrum import (SpectrumEntry, assemble_spectrum, mode_eigenvalues,
                             multiplicity_lambda, ordering_chain_holds, position_of_first_angular,
                             second_eigenfunction_is_radial)
from .thresholds import ThresholdReport, find_alpha_star, find_h0, find_h1, find_h_crossing
from .trial_bounds import (ConcentricShell, EccentricShell, StarShell, check_long_inequality,
                           extend_profile, symmetry_identity_check, weinberger_quotient)

__version__ = "0.1.0"
