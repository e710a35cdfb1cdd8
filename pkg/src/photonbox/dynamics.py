"""Backward-time Heisenberg propagation of the box and clock observables.

Time runs backward from the final box measurement: t = 0 is the instant the
box is weighed (or located), and t grows toward the earlier moment at which
the photon escaped.  In this convention the equations of motion are

    dq/dt   = p/M,
    dp/dt   = -m*g - V'(q),
    dqcl/dt = 1 - (g/c**2)*q,

with V'(q) = 0 for a freely falling box and V'(q) = k*q for a harmonic
suspension.  The clock variable qcl is kinematic: it has no conjugate
momentum and exerts no back-action on the box.

Because the equations are linear, the propagated operators stay affine in
the initial set {q(0), p(0), qcl(0), 1, m} and are represented as
:class:`~photonbox.operators.OperatorCoeffs`.  Two independent routes are
provided for both the operator frames and the two clock commutators:

* closed form (:func:`evolve_closed`, :func:`commutator_closed`), and
* fixed-step classical fourth-order integration (:func:`evolve_numeric`,
  :func:`commutator_ode`).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidStep, InvalidTime
from .operators import (
    BoxParams,
    CommutatorValue,
    Harmonic,
    OperatorCoeffs,
    PhysConstants,
    commutator,
)

__all__ = [
    "Pair",
    "NumericOptions",
    "HeisenbergFrame",
    "evolve_closed",
    "evolve_numeric",
    "evolve_numeric_grid",
    "commutator_closed",
    "commutator_ode",
    "commutator_ode_grid",
]

# Coefficient slot order used by the numeric route: (q, p, cl, 1, m).
_SLOT_ONE = 3
_SLOT_M = 4


class Pair(enum.Enum):
    """Which clock commutator to evaluate."""

    P_QCL = "p_qcl"
    Q_QCL = "q_qcl"


@dataclass(frozen=True)
class NumericOptions:
    """Settings for the fixed-step fourth-order integrator.

    ``step`` is an upper bound on the step size; each integration interval
    is divided evenly so the last node lands exactly on the target time.
    """

    step: float = 1e-3

    def __post_init__(self) -> None:
        if not math.isfinite(self.step) or self.step <= 0:
            raise InvalidStep(f"step must be finite and > 0, got {self.step!r}")


@dataclass(frozen=True)
class HeisenbergFrame:
    """The propagated observables Q(t), P(t), Qcl(t) at backward time t."""

    t: float
    Q: OperatorCoeffs
    P: OperatorCoeffs
    Qcl: OperatorCoeffs

    def coefficient_matrix(self) -> np.ndarray:
        """3x3 matrix of (a_q, a_p, a_cl) rows for Q, P, Qcl.

        This is the linear map that transports moments of the initial
        operators to moments of the propagated ones.
        """
        return np.array(
            [
                [self.Q.a_q, self.Q.a_p, self.Q.a_cl],
                [self.P.a_q, self.P.a_p, self.P.a_cl],
                [self.Qcl.a_q, self.Qcl.a_p, self.Qcl.a_cl],
            ]
        )

    def symplectic_chi(self) -> float:
        """chi of [Q(t), P(t)]; equals 1 for any unitary evolution."""
        return commutator(self.Q, self.P).chi


def _check_time(t: float) -> None:
    if not math.isfinite(t) or t < 0:
        raise InvalidTime(f"elapsed time must be finite and >= 0, got {t!r}")


def evolve_closed(consts: PhysConstants, box: BoxParams, t: float) -> HeisenbergFrame:
    """Closed-form Heisenberg frame at backward time t.

    Parameters
    ----------
    consts : PhysConstants
        Physical constants.
    box : BoxParams
        Box mass, photon mass, and suspension potential.
    t : float
        Elapsed backward time, >= 0.

    Returns
    -------
    HeisenbergFrame
        Q(t), P(t), Qcl(t) as affine combinations of the initial set.  At
        t = 0 the frame is the identity.
    """
    _check_time(t)
    g = consts.g
    c2 = consts.c * consts.c
    M = box.M
    if isinstance(box.potential, Harmonic):
        k = box.potential.k
        w = math.sqrt(k / M)
        wt = w * t
        sw = math.sin(wt)
        cw = math.cos(wt)
        q_row = OperatorCoeffs(
            a_q=cw,
            a_p=sw / (M * w),
            a_m=(g / k) * (cw - 1.0),
        )
        p_row = OperatorCoeffs(
            a_q=-M * w * sw,
            a_p=cw,
            a_m=-(M * w * g / k) * sw,
        )
        qcl_row = OperatorCoeffs(
            a_q=-(g / c2) * sw / w,
            a_p=-(g / c2) * (1.0 - cw) / (M * w * w),
            a_cl=1.0,
            a_1=t,
            a_m=-(g * g / (k * c2)) * (sw / w - t),
        )
    else:
        q_row = OperatorCoeffs(
            a_q=1.0,
            a_p=t / M,
            a_m=-g * t * t / (2.0 * M),
        )
        p_row = OperatorCoeffs(
            a_p=1.0,
            a_m=-g * t,
        )
        qcl_row = OperatorCoeffs(
            a_q=-(g / c2) * t,
            a_p=-(g / c2) * t * t / (2.0 * M),
            a_cl=1.0,
            a_1=t,
            a_m=g * g * t * t * t / (6.0 * M * c2),
        )
    return HeisenbergFrame(t=t, Q=q_row, P=p_row, Qcl=qcl_row)


def commutator_closed(
    pair: Pair, consts: PhysConstants, box: BoxParams, t: float
) -> CommutatorValue:
    """Closed-form clock commutator at backward time t.

    Both commutators vanish at t = 0 and grow with the elapsed backward
    time; for the harmonic suspension they oscillate and return to zero at
    every full period of the box.

    Parameters
    ----------
    pair : Pair
        P_QCL for [P(t), Qcl(t)], Q_QCL for [Q(t), Qcl(t)].
    consts, box, t
        As in :func:`evolve_closed`.

    Returns
    -------
    CommutatorValue
        chi with [X(t), Qcl(t)] = i*hbar*chi.
    """
    _check_time(t)
    g = consts.g
    c2 = consts.c * consts.c
    M = box.M
    if isinstance(box.potential, Harmonic):
        w = math.sqrt(box.potential.k / M)
        wt = w * t
        if pair is Pair.P_QCL:
            chi = g * math.sin(wt) / (w * c2)
        else:
            chi = g * (1.0 - math.cos(wt)) / (M * w * w * c2)
    else:
        if pair is Pair.P_QCL:
            chi = g * t / c2
        else:
            chi = g * t * t / (2.0 * M * c2)
    return CommutatorValue(chi)


# =============================================================================
# numeric route
# =============================================================================
#
# Both coefficient systems are linear with constant coefficients,
#
#     y' = G y + s,
#
# so the four stages of the classical fourth-order scheme combine exactly
# into one affine update per step,
#
#     y  <-  R y + r,      R = sum_{j<=4} (h G)^j / j!,
#                          r = h * (sum_{j<=3} (h G)^j / (j+1)!) s.
#
# Iterating R is arithmetically equivalent to the textbook stage evaluation
# and keeps the per-step cost at one small matrix product.


def _rk4_maps(G: np.ndarray, src: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    eye = np.eye(G.shape[0])
    hg = h * G
    hg2 = hg @ hg
    hg3 = hg2 @ hg
    hg4 = hg3 @ hg
    R = eye + hg + hg2 / 2.0 + hg3 / 6.0 + hg4 / 24.0
    r = h * ((eye + hg / 2.0 + hg2 / 6.0 + hg3 / 24.0) @ src)
    return R, r


def _leg_steps(dt: float, step: float) -> tuple[int, float]:
    n = max(1, math.ceil(dt / step - 1e-12))
    return n, dt / n


def _frame_generator(consts: PhysConstants, box: BoxParams) -> tuple[np.ndarray, np.ndarray]:
    g = consts.g
    c2 = consts.c * consts.c
    G = np.array(
        [
            [0.0, 1.0 / box.M, 0.0],
            [-box.spring_k, 0.0, 0.0],
            [-g / c2, 0.0, 0.0],
        ]
    )
    src = np.zeros((3, 5))
    src[1, _SLOT_M] = -g
    src[2, _SLOT_ONE] = 1.0
    return G, src


def _chi_generator(consts: PhysConstants, box: BoxParams) -> tuple[np.ndarray, np.ndarray]:
    g = consts.g
    c2 = consts.c * consts.c
    G = np.array([[0.0, -box.spring_k], [1.0 / box.M, 0.0]])
    src = np.array([g / c2, 0.0])
    return G, src


def _check_grid(ts: Sequence[float]) -> None:
    prev = 0.0
    for t in ts:
        _check_time(t)
        if t < prev:
            raise InvalidTime("grid times must be sorted ascending")
        prev = t


def _rows_to_frame(t: float, rows: np.ndarray) -> HeisenbergFrame:
    def coeffs(row: np.ndarray) -> OperatorCoeffs:
        return OperatorCoeffs(
            a_q=float(row[0]),
            a_p=float(row[1]),
            a_cl=float(row[2]),
            a_1=float(row[3]),
            a_m=float(row[4]),
        )

    return HeisenbergFrame(t=t, Q=coeffs(rows[0]), P=coeffs(rows[1]), Qcl=coeffs(rows[2]))


def evolve_numeric_grid(
    consts: PhysConstants,
    box: BoxParams,
    ts: Sequence[float],
    opts: NumericOptions | None = None,
) -> list[HeisenbergFrame]:
    """Numeric Heisenberg frames at an ascending grid of backward times.

    The coefficient system is integrated once from t = 0, emitting a frame
    at each grid time, so a dense grid costs no more than a single
    integration to the final time.
    """
    opts = opts or NumericOptions()
    _check_grid(ts)
    G, src = _frame_generator(consts, box)
    rows = np.zeros((3, 5))
    rows[0, 0] = rows[1, 1] = rows[2, 2] = 1.0
    frames = []
    t_prev = 0.0
    for t in ts:
        dt = t - t_prev
        if dt > 0:
            n, h = _leg_steps(dt, opts.step)
            R, r = _rk4_maps(G, src, h)
            for _ in range(n):
                rows = R @ rows + r
        frames.append(_rows_to_frame(t, rows))
        t_prev = t
    return frames


def evolve_numeric(
    consts: PhysConstants,
    box: BoxParams,
    t: float,
    opts: NumericOptions | None = None,
) -> HeisenbergFrame:
    """Heisenberg frame at backward time t by fourth-order integration.

    Integrates the coefficient equations

        aQ' = aP/M,    aP' = -g*e_m - k*aQ,    aQcl' = e_1 - (g/c**2)*aQ

    from the identity frame at t = 0.  Free-fall coefficients are cubic
    polynomials in t, so the result is exact there; for the harmonic case
    the global error scales as step**4.

    Raises
    ------
    InvalidTime
        If t is negative or not finite.
    InvalidStep
        If the step exceeds a positive target time.
    """
    opts = opts or NumericOptions()
    _check_time(t)
    if t > 0 and opts.step > t:
        raise InvalidStep(f"step {opts.step!r} exceeds target time {t!r}")
    return evolve_numeric_grid(consts, box, [t], opts)[0]


def commutator_ode_grid(
    consts: PhysConstants,
    box: BoxParams,
    ts: Sequence[float],
    opts: NumericOptions | None = None,
) -> np.ndarray:
    """Both clock commutators on an ascending time grid, by integration.

    Returns an array of shape (len(ts), 2) holding (chi_p_qcl, chi_q_qcl)
    per grid time, obtained by integrating

        chi_p' = g/c**2 - k*chi_q,    chi_q' = chi_p/M

    from chi_p = chi_q = 0 at t = 0.
    """
    opts = opts or NumericOptions()
    _check_grid(ts)
    G, src = _chi_generator(consts, box)
    v = np.zeros(2)
    out = np.empty((len(ts), 2))
    t_prev = 0.0
    for i, t in enumerate(ts):
        dt = t - t_prev
        if dt > 0:
            n, h = _leg_steps(dt, opts.step)
            R, r = _rk4_maps(G, src, h)
            for _ in range(n):
                v = R @ v + r
        out[i] = v
        t_prev = t
    return out


def commutator_ode(
    pair: Pair,
    consts: PhysConstants,
    box: BoxParams,
    t: float,
    opts: NumericOptions | None = None,
) -> CommutatorValue:
    """Clock commutator at backward time t via the commutator equations.

    Independent of the closed forms in :func:`commutator_closed`; the two
    routes should agree to the integrator's accuracy.
    """
    opts = opts or NumericOptions()
    _check_time(t)
    if t > 0 and opts.step > t:
        raise InvalidStep(f"step {opts.step!r} exceeds target time {t!r}")
    chi_p, chi_q = commutator_ode_grid(consts, box, [t], opts)[0]
    return CommutatorValue(float(chi_p if pair is Pair.P_QCL else chi_q))
