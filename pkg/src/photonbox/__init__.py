"""Photon-box weighing simulator.

Backward-time Heisenberg dynamics for a photon box on a spring or in free
fall, with a gravitationally red-shifted clock attached.  The package
propagates operator coefficients and Gaussian statistics, infers photon
energy and arrival-time uncertainties from a delayed choice of final
measurement, and checks the resulting time-energy product against hbar/2.
"""

from .dynamics import (
    HeisenbergFrame,
    NumericOptions,
    Pair,
    commutator_closed,
    commutator_ode,
    commutator_ode_grid,
    evolve_closed,
    evolve_numeric,
    evolve_numeric_grid,
)
from .errors import (
    ConfigError,
    InvalidMixture,
    InvalidPrecision,
    InvalidState,
    InvalidStep,
    InvalidTime,
    NoElapsedTime,
    PhotonBoxError,
    RangeError,
    StepError,
)
from .operators import (
    IDENTITY,
    INITIAL_CLOCK,
    INITIAL_MOMENTUM,
    INITIAL_POSITION,
    MASS,
    BoxParams,
    CommutatorValue,
    FreeFall,
    Harmonic,
    OperatorCoeffs,
    PhysConstants,
    commutator,
    linear_combine,
    mean_of,
)
from .oracle import (
    OracleCommutator,
    OracleConfig,
    OracleFrame,
    OracleWorkspace,
    build_workspace,
    oracle_commutator,
    oracle_evolve,
)
from .scenario import (
    CheckResult,
    Measurement,
    RunResult,
    Scenario,
    SweepRow,
    VerificationReport,
    run_scenario,
    sweep,
    verify,
)
from .states import (
    BOUND_SLACK,
    DEGENERACY_ATOL,
    MIN_DEVICE_PRECISION,
    BoundCheck,
    Denominator,
    GaussianState,
    InferenceReport,
    MassEstimate,
    MassMixture,
    MixtureMoments,
    Route,
    TimeEnergyDiagnostic,
    check_bound,
    mass_uncertainty,
    mixture_statistics,
    photon_inference,
    prepare_post_measurement_state,
    propagate_state,
    time_energy_diagnostic,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "PhotonBoxError",
    "InvalidTime",
    "InvalidStep",
    "InvalidState",
    "InvalidPrecision",
    "InvalidMixture",
    "NoElapsedTime",
    "ConfigError",
    "StepError",
    "RangeError",
    # operators
    "PhysConstants",
    "FreeFall",
    "Harmonic",
    "BoxParams",
    "OperatorCoeffs",
    "CommutatorValue",
    "INITIAL_POSITION",
    "INITIAL_MOMENTUM",
    "INITIAL_CLOCK",
    "IDENTITY",
    "MASS",
    "commutator",
    "linear_combine",
    "mean_of",
    # dynamics
    "Pair",
    "NumericOptions",
    "HeisenbergFrame",
    "evolve_closed",
    "evolve_numeric",
    "evolve_numeric_grid",
    "commutator_closed",
    "commutator_ode",
    "commutator_ode_grid",
    # states
    "Route",
    "Denominator",
    "GaussianState",
    "MassMixture",
    "MassEstimate",
    "BoundCheck",
    "InferenceReport",
    "MixtureMoments",
    "TimeEnergyDiagnostic",
    "BOUND_SLACK",
    "DEGENERACY_ATOL",
    "MIN_DEVICE_PRECISION",
    "propagate_state",
    "check_bound",
    "mass_uncertainty",
    "photon_inference",
    "prepare_post_measurement_state",
    "mixture_statistics",
    "time_energy_diagnostic",
    # oracle
    "OracleConfig",
    "OracleWorkspace",
    "OracleFrame",
    "OracleCommutator",
    "build_workspace",
    "oracle_evolve",
    "oracle_commutator",
    # scenario
    "Measurement",
    "Scenario",
    "RunResult",
    "SweepRow",
    "CheckResult",
    "VerificationReport",
    "run_scenario",
    "sweep",
    "verify",
]
