"""zetalab — a numerical laboratory for the critical line.

The package evaluates the Riemann zeta function on the strip and locates
its critical-line zeros, evaluates the two-parameter transcendent
``sum xi^n (eta+n)^{-z}`` by independent routes, builds the oscillatory
wave families tied to the zero condition, realizes the mixed-derivative
wave operator as finite-difference stencils, and verifies the identities
connecting all of these with quantified tolerances and convergence
orders.  ``zetalab.cli`` exposes everything as a batch command line.

Numerical kernels run on a compiled extension when it was built, with an
identical pure-Python fallback otherwise; see ``zetalab._kernels``.
"""

__version__ = "0.1.0"

from . import errors, hamiltonian, lerch, numerics, report, waves, zeta
from ._kernels import backend_name
from .errors import (
    DomainError,
    NumericalBudgetError,
    TruncationWarning,
    ZetalabError,
)
from .numerics.types import (
    OSCILLATORY_DEFAULT,
    QuadratureResult,
    ResidualReport,
    SMOOTH_DEFAULT,
    ToleranceSpec,
)

__all__ = [
    "__version__",
    "backend_name",
    "errors",
    "hamiltonian",
    "lerch",
    "numerics",
    "report",
    "waves",
    "zeta",
    "DomainError",
    "NumericalBudgetError",
    "TruncationWarning",
    "ZetalabError",
    "QuadratureResult",
    "ResidualReport",
    "ToleranceSpec",
    "SMOOTH_DEFAULT",
    "OSCILLATORY_DEFAULT",
]
