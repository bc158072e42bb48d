"""quadorbit: exact computation around semigroups of quadratic maps x^2 + c.

Orbit computation, irreducibility (stability) and maximal-subextension
certificates over Q and Q(t), classification of finite-orbit obstructions,
exact parity-property counting over coefficient boxes, the fixed-point
coin-flip process on the binary tree, and prime-divisor density scans.
"""

__version__ = "0.1.0"

from .dynamics import (  # noqa: E402,F401
    GeneratorSet,
    OrbitCaps,
    SequenceCoding,
    classify_finite_orbit_obstruction,
    critical_orbit,
    escape_criterion,
    orbit_contains_finite_orbit_point,
    semigroup_orbit,
)
from .certify import certify_chain, level2_oracle, tool_conditions  # noqa: E402,F401
from .census import bound_formula, convergence_experiment, exact_set_fraction, r_d  # noqa: E402,F401
from .process import fpp_full_binary, sample_codings, simulate_process  # noqa: E402,F401
from .primescan import density_profile, prime_divides_orbit  # noqa: E402,F401
