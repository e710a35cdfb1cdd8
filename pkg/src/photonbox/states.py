"""Gaussian states, uncertainty bounds, and photon energy/arrival inference.

A Gaussian state collects the first and second moments of the fluctuations
of (q, p, qcl).  Propagation is exact: the frame coefficients form a linear
map S, means transport affinely, and the covariance transports as
S Sigma S^T.  On top of that this module implements

* the Robertson bound check dX*dY >= hbar*|chi|/2 for the clock pairs,
* the photon mass spread inferred from a box measurement, dm = dX/|a_m|,
  which converts to the energy spread dE = c**2*dm,
* the arrival-time spread dT, read off as the clock spread at emission,
* post-measurement state preparation at the device precision limit,
* classical mass mixtures and their effect on the propagated moments, and
* an energy/time ratio diagnostic (reported, never asserted).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dynamics import HeisenbergFrame, Pair, evolve_closed
from .errors import (
    InvalidMixture,
    InvalidPrecision,
    InvalidState,
    NoElapsedTime,
)
from .operators import BoxParams, CommutatorValue, Harmonic, PhysConstants, mean_of

__all__ = [
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
]

# Relative slack applied to every bound comparison, so that states which
# saturate an uncertainty relation are not rejected by rounding.
BOUND_SLACK = 1e-9

# Mass coefficients smaller than this (in the engine's dimensionless units)
# count as vanished: the measurement carries no mass information there.
# sin(w*t) evaluated at the floating-point representation of a full period
# is of order 1e-16, so revival rows are flagged while neighbors are not.
DEGENERACY_ATOL = 1e-12

# Device precisions below this are rejected rather than fed into the
# conjugate-spread formula hbar/(2*dx).
MIN_DEVICE_PRECISION = 1e-12


class Route(enum.Enum):
    """Which box observable the final measurement pins down."""

    P = "p"
    Q = "q"


class Denominator(enum.Enum):
    """Denominator choice for the energy/time diagnostic ratio."""

    MEAN_CLOCK = "mean_clock"
    MEAN_CLOCK_RATE = "mean_clock_rate"


@dataclass(frozen=True)
class GaussianState:
    """First and second moments over (q, p, qcl).

    ``mu`` has shape (3,), ``sigma`` shape (3, 3).  For an initial state
    these refer to the t = 0 operators; a propagated state holds the
    moments of Q(t), P(t), Qcl(t).  Treat instances as read-only.
    """

    mu: np.ndarray
    sigma: np.ndarray

    def __post_init__(self) -> None:
        mu = np.asarray(self.mu, dtype=float)
        sigma = np.asarray(self.sigma, dtype=float)
        if mu.shape != (3,):
            raise InvalidState(f"mu must have shape (3,), got {mu.shape}")
        if sigma.shape != (3, 3):
            raise InvalidState(f"sigma must have shape (3, 3), got {sigma.shape}")
        if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(sigma))):
            raise InvalidState("moments must be finite")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma", sigma)

    @property
    def spreads(self) -> np.ndarray:
        """Standard deviations (dq, dp, dqcl)."""
        return np.sqrt(np.maximum(np.diag(self.sigma), 0.0))

    def validate(self, hbar: float | None = None) -> None:
        """Check the structural invariants, and quantum validity if hbar given.

        Raises
        ------
        InvalidState
            If sigma is not symmetric positive semidefinite, or (with hbar)
            if the q/p block violates sigma_qq*sigma_pp - sigma_qp**2 >=
            hbar**2/4.
        """
        sigma = self.sigma
        scale = max(1.0, float(np.abs(sigma).max()))
        if not np.allclose(sigma, sigma.T, rtol=0.0, atol=1e-10 * scale):
            raise InvalidState("sigma must be symmetric")
        min_eig = float(np.linalg.eigvalsh(sigma).min())
        if min_eig < -1e-10 * scale:
            raise InvalidState(f"sigma must be positive semidefinite, min eig {min_eig}")
        if sigma[2, 2] < 0:
            raise InvalidState("clock variance must be >= 0")
        if hbar is not None:
            subdet = sigma[0, 0] * sigma[1, 1] - sigma[0, 1] ** 2
            if subdet < (hbar * hbar / 4.0) * (1.0 - 1e-12):
                raise InvalidState(
                    f"q/p uncertainty product below hbar**2/4: {subdet} < {hbar * hbar / 4.0}"
                )


@dataclass(frozen=True)
class MassMixture:
    """Classical mixture of photon masses, as (weight, m) components."""

    components: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        comps = tuple((float(w), float(m)) for w, m in self.components)
        if not comps:
            raise InvalidMixture("mixture must have at least one component")
        total = 0.0
        for w, m in comps:
            if not (math.isfinite(w) and math.isfinite(m)):
                raise InvalidMixture("weights and masses must be finite")
            if w <= 0:
                raise InvalidMixture(f"weights must be > 0, got {w}")
            if m < 0:
                raise InvalidMixture(f"masses must be >= 0, got {m}")
            total += w
        if abs(total - 1.0) > 1e-12:
            raise InvalidMixture(f"weights must sum to 1 within 1e-12, got {total}")
        object.__setattr__(self, "components", comps)


@dataclass(frozen=True)
class MassEstimate:
    """Photon mass spread read off from one measured box observable."""

    dm: float
    valid: bool
    degenerate: bool


@dataclass(frozen=True)
class BoundCheck:
    """One Robertson bound comparison for a clock pair."""

    dx: float
    dy: float
    product: float
    bound: float
    ok: bool


@dataclass(frozen=True)
class InferenceReport:
    """Photon energy and arrival-time spreads inferred from one route."""

    route: Route
    t: float
    dm: float
    dE: float
    dT: float
    product: float
    bound: float
    valid: bool
    degenerate: bool

    @property
    def ok(self) -> bool:
        """Whether the energy/time product clears the bound (with slack)."""
        return self.product >= self.bound * (1.0 - BOUND_SLACK)


@dataclass(frozen=True)
class MixtureMoments:
    """Total means and spreads of (Q, P, Qcl) under a mass mixture."""

    mean: np.ndarray
    spread: np.ndarray


@dataclass(frozen=True)
class TimeEnergyDiagnostic:
    """Energy/time ratio diagnostic; reported, never asserted."""

    dH: float
    dqcl: float
    denom: float
    lhs: float
    bound: float


def propagate_state(
    frame: HeisenbergFrame,
    state0: GaussianState,
    m: float,
    hbar: float | None = None,
) -> GaussianState:
    """Propagate a t = 0 Gaussian state along a Heisenberg frame.

    Parameters
    ----------
    frame : HeisenbergFrame
        Frame at the target backward time.
    state0 : GaussianState
        Moments of the initial operators.
    m : float
        Photon mass for the mean transport (variances do not depend on it).
    hbar : float, optional
        When given, the initial state must also satisfy the quantum
        uncertainty invariant.

    Returns
    -------
    GaussianState
        Moments of Q(t), P(t), Qcl(t): mu_X = mean_of(X) and
        Sigma(t) = S Sigma(0) S^T with S the frame coefficient matrix.
    """
    state0.validate(hbar)
    mu_t = np.array(
        [
            mean_of(frame.Q, state0.mu, m),
            mean_of(frame.P, state0.mu, m),
            mean_of(frame.Qcl, state0.mu, m),
        ]
    )
    S = frame.coefficient_matrix()
    sigma_t = S @ state0.sigma @ S.T
    sigma_t = 0.5 * (sigma_t + sigma_t.T)
    return GaussianState(mu=mu_t, sigma=sigma_t)


def check_bound(
    state_t: GaussianState,
    chi: CommutatorValue,
    pair: Pair,
    consts: PhysConstants,
) -> BoundCheck:
    """Robertson bound dX*dY >= hbar*|chi|/2 for one clock pair.

    ``state_t`` must hold the propagated moments at the same time the
    commutator was evaluated.  The comparison carries a relative slack of
    ``BOUND_SLACK`` so saturating states pass.
    """
    spreads = state_t.spreads
    dx = float(spreads[1] if pair is Pair.P_QCL else spreads[0])
    dy = float(spreads[2])
    product = dx * dy
    bound = consts.hbar * abs(chi.chi) / 2.0
    return BoundCheck(
        dx=dx,
        dy=dy,
        product=product,
        bound=bound,
        ok=product >= bound * (1.0 - BOUND_SLACK),
    )


def mass_uncertainty(
    frame: HeisenbergFrame,
    route: Route,
    dx: float,
    consts: PhysConstants,
    box: BoxParams,
) -> MassEstimate:
    """Photon mass spread from a measured box spread.

    The measured observable X(t) carries the photon mass through its a_m
    coefficient, so a spread dX translates into dm = dX/|a_m(X(t))|.  For
    free fall this reproduces dm = dP/(g*t) on the momentum route and
    dm = 2*M*dQ/(g*t**2) on the position route; for the harmonic
    suspension the same rule yields the spring-constant forms with
    1 - cos(w*t) and sin(w*t).

    When |a_m| has vanished (t = 0, or a full period of the suspension)
    the measurement carries no mass information: ``dm`` is returned as
    ``inf`` and ``degenerate`` is set.

    The ``valid`` flag reports the side condition w*t < 0.1*M/m under
    which the harmonic analysis is trustworthy; free fall is always valid.
    """
    if not (math.isfinite(dx) and dx >= 0):
        raise ValueError(f"dx must be finite and >= 0, got {dx!r}")
    op = frame.P if route is Route.P else frame.Q
    coeff = abs(op.a_m)
    degenerate = coeff < DEGENERACY_ATOL
    dm = math.inf if degenerate else dx / coeff
    if isinstance(box.potential, Harmonic):
        valid = box.omega * frame.t * box.m < 0.1 * box.M
    else:
        valid = True
    return MassEstimate(dm=dm, valid=valid, degenerate=degenerate)


def photon_inference(
    consts: PhysConstants,
    box: BoxParams,
    state0: GaussianState,
    route: Route,
    t: float,
) -> InferenceReport:
    """Infer the photon energy and arrival-time spreads for one route.

    Propagates the post-measurement state back to the emission time t,
    reads the arrival-time spread off the clock, dT = dQcl(t), converts the
    measured box spread into dm and dE = c**2*dm, and reports the product
    dE*dT next to the bound hbar/2.  On a degenerate frame (no mass
    information) dm, dE, and the product are all ``inf``.
    """
    frame = evolve_closed(consts, box, t)
    state_t = propagate_state(frame, state0, box.m, hbar=consts.hbar)
    dq, dp, dqcl = (float(s) for s in state_t.spreads)
    dx = dp if route is Route.P else dq
    est = mass_uncertainty(frame, route, dx, consts, box)
    if est.degenerate:
        dE = math.inf
        product = math.inf
    else:
        dE = consts.c * consts.c * est.dm
        product = dE * dqcl
    return InferenceReport(
        route=route,
        t=t,
        dm=est.dm,
        dE=dE,
        dT=dqcl,
        product=product,
        bound=consts.hbar / 2.0,
        valid=est.valid,
        degenerate=est.degenerate,
    )


def prepare_post_measurement_state(
    route: Route,
    device_dx: float,
    device_dcl: float,
    consts: PhysConstants,
) -> GaussianState:
    """Gaussian state right after the final box measurement.

    The measured observable is pinned to the device precision and its
    conjugate is spread to the matching minimum-uncertainty width
    hbar/(2*device_dx).  The clock reading is independent of both, with
    spread ``device_dcl``.

    Raises
    ------
    InvalidPrecision
        If device_dx is below ``MIN_DEVICE_PRECISION`` (the conjugate
        spread would diverge) or device_dcl is negative.
    """
    if not (math.isfinite(device_dx) and device_dx >= MIN_DEVICE_PRECISION):
        raise InvalidPrecision(
            f"device_dx must be finite and >= {MIN_DEVICE_PRECISION}, got {device_dx!r}"
        )
    if not (math.isfinite(device_dcl) and device_dcl >= 0):
        raise InvalidPrecision(f"device_dcl must be finite and >= 0, got {device_dcl!r}")
    conjugate = consts.hbar / (2.0 * device_dx)
    if route is Route.P:
        dq0, dp0 = conjugate, device_dx
    else:
        dq0, dp0 = device_dx, conjugate
    sigma = np.diag([dq0 * dq0, dp0 * dp0, device_dcl * device_dcl])
    return GaussianState(mu=np.zeros(3), sigma=sigma)


def mixture_statistics(
    frame: HeisenbergFrame,
    mixture: MassMixture,
    state0: GaussianState,
) -> MixtureMoments:
    """Total moments of (Q, P, Qcl) under a classical mass mixture.

    Each component shares the quantum state but carries its own mass, so
    the component variances coincide and only the component means differ:

        total mean = sum_i w_i mu_i,
        total var  = sum_i w_i (var + mu_i**2) - (total mean)**2.
    """
    state0.validate()
    S = frame.coefficient_matrix()
    base_var = np.einsum("ij,jk,ik->i", S, state0.sigma, S)
    ops = (frame.Q, frame.P, frame.Qcl)
    mean = np.zeros(3)
    second = np.zeros(3)
    for weight, m in mixture.components:
        mu_i = np.array([mean_of(op, state0.mu, m) for op in ops])
        mean += weight * mu_i
        second += weight * (base_var + mu_i**2)
    var = second - mean**2
    return MixtureMoments(mean=mean, spread=np.sqrt(np.maximum(var, 0.0)))


def time_energy_diagnostic(
    state_t: GaussianState,
    frame: HeisenbergFrame,
    consts: PhysConstants,
    box: BoxParams,
    m: float,
    denominator: Denominator = Denominator.MEAN_CLOCK,
) -> TimeEnergyDiagnostic:
    """Energy/time ratio diagnostic dH*dqcl/denom, reported next to hbar/2.

    dH is the Gaussian spread of H = p**2/(2M) + m*g*q + V(q) in the
    propagated state, computed from the classical moment formula

        var H = grad^T Sigma grad + tr((A Sigma)**2)/2,

    with grad the gradient and A the Hessian of H at the mean.  The
    denominator is either the mean clock reading (default) or the mean
    clock rate 1 - (g/c**2)*mu_q.  Nothing is asserted about the ratio;
    callers decide what to make of it.

    Raises
    ------
    NoElapsedTime
        If the selected denominator vanishes.
    """
    mu = state_t.mu
    sigma = state_t.sigma
    k = box.spring_k
    grad = np.array([m * consts.g + k * mu[0], mu[1] / box.M, 0.0])
    hess = np.diag([k, 1.0 / box.M, 0.0])
    hs = hess @ sigma
    var_h = float(grad @ sigma @ grad + 0.5 * np.trace(hs @ hs))
    dH = math.sqrt(max(var_h, 0.0))
    dqcl = float(state_t.spreads[2])
    if denominator is Denominator.MEAN_CLOCK:
        denom = float(mu[2])
    else:
        denom = 1.0 - (consts.g / (consts.c * consts.c)) * float(mu[0])
    if denom == 0.0:
        raise NoElapsedTime(f"diagnostic denominator vanishes at t={frame.t}")
    return TimeEnergyDiagnostic(
        dH=dH,
        dqcl=dqcl,
        denom=denom,
        lhs=dH * dqcl / denom,
        bound=consts.hbar / 2.0,
    )
