"""End-to-end scenarios: single runs, measurement-time sweeps, verification.

A :class:`Scenario` bundles the physics (constants, box, measurement device,
emission time) with numeric settings.  Everything here is deterministic:
identical scenario values produce bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dynamics import (
    HeisenbergFrame,
    NumericOptions,
    Pair,
    commutator_closed,
    commutator_ode_grid,
    evolve_closed,
    evolve_numeric_grid,
)
from .errors import InvalidTime, RangeError
from .operators import BoxParams, Harmonic, PhysConstants, commutator
from .oracle import OracleConfig, build_workspace, oracle_commutator, oracle_evolve
from .states import (
    BoundCheck,
    GaussianState,
    InferenceReport,
    Route,
    check_bound,
    mass_uncertainty,
    photon_inference,
    prepare_post_measurement_state,
    propagate_state,
)

__all__ = [
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


@dataclass(frozen=True)
class Measurement:
    """Final measurement: route, device precision, and clock read-off spread."""

    route: Route
    device_dx: float
    device_dcl: float = 0.0


@dataclass(frozen=True)
class Scenario:
    """Full description of one delayed-measurement experiment."""

    constants: PhysConstants
    box: BoxParams
    measurement: Measurement
    t_emit: float
    numeric: NumericOptions = field(default_factory=NumericOptions)
    oracle: OracleConfig | None = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.t_emit) or self.t_emit < 0:
            raise InvalidTime(f"t_emit must be finite and >= 0, got {self.t_emit!r}")

    def initial_state(self) -> GaussianState:
        return prepare_post_measurement_state(
            self.measurement.route,
            self.measurement.device_dx,
            self.measurement.device_dcl,
            self.constants,
        )


@dataclass(frozen=True)
class RunResult:
    """Inference report plus the frame and commutator summary behind it."""

    report: InferenceReport
    frame: HeisenbergFrame
    chi_p_qcl: float
    chi_q_qcl: float
    dq: float
    dp: float
    dqcl: float
    check_p: BoundCheck
    check_q: BoundCheck


@dataclass(frozen=True)
class SweepRow:
    """One measurement time in a sweep; field order matches the CSV schema."""

    t: float
    chi_p_qcl: float
    chi_q_qcl: float
    dq: float
    dp: float
    dqcl: float
    dm_p: float
    dm_q: float
    dE_p: float
    dE_q: float
    dT: float
    prod_p: float
    prod_q: float
    bound_ET: float
    valid: bool
    degenerate_p: bool
    degenerate_q: bool


@dataclass(frozen=True)
class CheckResult:
    """One verification check with its worst deviation and tolerance."""

    name: str
    max_dev: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def run_scenario(s: Scenario) -> RunResult:
    """Run one scenario end to end.

    Prepares the post-measurement state, propagates it to the emission
    time, evaluates both clock commutators and their Robertson bounds, and
    infers the photon energy/arrival-time spreads along the scenario's
    measurement route.
    """
    consts, box, t = s.constants, s.box, s.t_emit
    state0 = s.initial_state()
    frame = evolve_closed(consts, box, t)
    state_t = propagate_state(frame, state0, box.m, hbar=consts.hbar)
    dq, dp, dqcl = (float(v) for v in state_t.spreads)
    chi_p = commutator_closed(Pair.P_QCL, consts, box, t)
    chi_q = commutator_closed(Pair.Q_QCL, consts, box, t)
    return RunResult(
        report=photon_inference(consts, box, state0, s.measurement.route, t),
        frame=frame,
        chi_p_qcl=chi_p.chi,
        chi_q_qcl=chi_q.chi,
        dq=dq,
        dp=dp,
        dqcl=dqcl,
        check_p=check_bound(state_t, chi_p, Pair.P_QCL, consts),
        check_q=check_bound(state_t, chi_q, Pair.Q_QCL, consts),
    )


def sweep(s: Scenario, t_min: float, t_max: float, steps: int) -> list[SweepRow]:
    """Sweep the emission time over a uniform grid.

    Both inference routes are evaluated from the same propagated state at
    every grid point, so their columns stay directly comparable.

    Raises
    ------
    RangeError
        If the range is not 0 <= t_min < t_max with steps >= 2.
    """
    if not (math.isfinite(t_min) and math.isfinite(t_max)):
        raise RangeError("sweep range must be finite")
    if t_min < 0 or t_max <= t_min:
        raise RangeError(f"need 0 <= t_min < t_max, got [{t_min!r}, {t_max!r}]")
    if steps < 2:
        raise RangeError(f"steps must be >= 2, got {steps}")
    consts, box = s.constants, s.box
    c2 = consts.c * consts.c
    state0 = s.initial_state()
    rows = []
    for t in np.linspace(t_min, t_max, steps):
        t = float(t)
        frame = evolve_closed(consts, box, t)
        state_t = propagate_state(frame, state0, box.m, hbar=consts.hbar)
        dq, dp, dqcl = (float(v) for v in state_t.spreads)
        est_p = mass_uncertainty(frame, Route.P, dp, consts, box)
        est_q = mass_uncertainty(frame, Route.Q, dq, consts, box)
        dE_p = math.inf if est_p.degenerate else c2 * est_p.dm
        dE_q = math.inf if est_q.degenerate else c2 * est_q.dm
        rows.append(
            SweepRow(
                t=t,
                chi_p_qcl=commutator_closed(Pair.P_QCL, consts, box, t).chi,
                chi_q_qcl=commutator_closed(Pair.Q_QCL, consts, box, t).chi,
                dq=dq,
                dp=dp,
                dqcl=dqcl,
                dm_p=est_p.dm,
                dm_q=est_q.dm,
                dE_p=dE_p,
                dE_q=dE_q,
                dT=dqcl,
                prod_p=math.inf if est_p.degenerate else dE_p * dqcl,
                prod_q=math.inf if est_q.degenerate else dE_q * dqcl,
                bound_ET=consts.hbar / 2.0,
                valid=est_p.valid,
                degenerate_p=est_p.degenerate,
                degenerate_q=est_q.degenerate,
            )
        )
    return rows


def _unit_floor_dev(value: float, ref: float) -> float:
    """|value - ref| relative to max(1, |ref|)."""
    return abs(value - ref) / max(1.0, abs(ref))


_FRAME_COEFFS = ("a_q", "a_p", "a_cl", "a_1", "a_m")


def _frame_dev(numeric: HeisenbergFrame, closed: HeisenbergFrame) -> float:
    dev = 0.0
    for name in ("Q", "P", "Qcl"):
        num_op = getattr(numeric, name)
        ref_op = getattr(closed, name)
        for coeff in _FRAME_COEFFS:
            dev = max(dev, _unit_floor_dev(getattr(num_op, coeff), getattr(ref_op, coeff)))
    return dev


def verify(
    s: Scenario,
    grid: int = 100,
    tol: float = 1e-9,
    use_oracle: bool = False,
    oracle_tol: float = 1e-6,
    t_max: float | None = None,
) -> VerificationReport:
    """Cross-check the closed forms against the independent routes.

    Runs, over a uniform time grid up to ``t_max`` (default: the scenario's
    t_emit, or 4 if that is zero):

    * closed-form frames against the fourth-order coefficient integration,
    * closed-form commutators against the commutator-equation integration,
    * commutators recomputed from the frames (both routes) against the
      closed forms,
    * the symplectic invariant chi(Q, P) = 1 on both frame routes,

    and, when ``use_oracle`` is set, the truncated-Fock matrix commutators
    (restricted block and vacuum probe) against the engine's chi on a
    coarser grid.  All deviations are measured relative to max(1, |ref|).
    """
    if grid < 2:
        raise RangeError(f"grid must be >= 2, got {grid}")
    consts, box = s.constants, s.box
    T = t_max if t_max is not None else (s.t_emit if s.t_emit > 0 else 4.0)
    ts = [float(t) for t in np.linspace(0.0, T, grid)]

    closed = [evolve_closed(consts, box, t) for t in ts]
    numeric = evolve_numeric_grid(consts, box, ts, s.numeric)
    chi_closed = [
        (
            commutator_closed(Pair.P_QCL, consts, box, t).chi,
            commutator_closed(Pair.Q_QCL, consts, box, t).chi,
        )
        for t in ts
    ]
    chi_ode = commutator_ode_grid(consts, box, ts, s.numeric)

    frame_dev = max(_frame_dev(n, c) for n, c in zip(numeric, closed))
    ode_dev = max(
        max(
            _unit_floor_dev(float(ode[0]), ref[0]),
            _unit_floor_dev(float(ode[1]), ref[1]),
        )
        for ode, ref in zip(chi_ode, chi_closed)
    )
    algebra_dev = 0.0
    rk4_algebra_dev = 0.0
    sympl_closed_dev = 0.0
    sympl_rk4_dev = 0.0
    for frame_c, frame_n, ref in zip(closed, numeric, chi_closed):
        algebra_dev = max(
            algebra_dev,
            _unit_floor_dev(commutator(frame_c.P, frame_c.Qcl).chi, ref[0]),
            _unit_floor_dev(commutator(frame_c.Q, frame_c.Qcl).chi, ref[1]),
        )
        rk4_algebra_dev = max(
            rk4_algebra_dev,
            _unit_floor_dev(commutator(frame_n.P, frame_n.Qcl).chi, ref[0]),
            _unit_floor_dev(commutator(frame_n.Q, frame_n.Qcl).chi, ref[1]),
        )
        sympl_closed_dev = max(sympl_closed_dev, abs(frame_c.symplectic_chi() - 1.0))
        sympl_rk4_dev = max(sympl_rk4_dev, abs(frame_n.symplectic_chi() - 1.0))

    checks = [
        CheckResult("frame_closed_vs_rk4", frame_dev, tol, frame_dev <= tol),
        CheckResult("chi_closed_vs_ode", ode_dev, tol, ode_dev <= tol),
        CheckResult("chi_frames_vs_closed", algebra_dev, tol, algebra_dev <= tol),
        CheckResult("chi_rk4_frames_vs_closed", rk4_algebra_dev, tol, rk4_algebra_dev <= tol),
        CheckResult("symplectic_closed", sympl_closed_dev, tol, sympl_closed_dev <= tol),
        CheckResult("symplectic_rk4", sympl_rk4_dev, tol, sympl_rk4_dev <= tol),
    ]

    if use_oracle:
        cfg = s.oracle or OracleConfig()
        ws = build_workspace(cfg, consts)
        # Truncation is only trustworthy for moderate phase advance, so the
        # oracle grid stays within t <= 4 (free fall) or w*t <= 4 (harmonic).
        if isinstance(box.potential, Harmonic):
            T_o = min(T, 4.0 / box.omega)
        else:
            T_o = min(T, 4.0)
        ts_o = [float(t) for t in np.linspace(0.0, T_o, 5) if t == 0.0 or t >= cfg.step]
        block_p = block_q = probe_p = probe_q = 0.0
        for t in ts_o:
            mats = oracle_evolve(ws, consts, box, t)
            ref_p = commutator_closed(Pair.P_QCL, consts, box, t).chi
            ref_q = commutator_closed(Pair.Q_QCL, consts, box, t).chi
            oc_p = oracle_commutator(ws, mats.p, mats.qcl, ws.vacuum, chi_ref=ref_p)
            oc_q = oracle_commutator(ws, mats.q, mats.qcl, ws.vacuum, chi_ref=ref_q)
            block_p = max(block_p, oc_p.block_dev / max(1.0, abs(ref_p)))
            block_q = max(block_q, oc_q.block_dev / max(1.0, abs(ref_q)))
            probe_p = max(probe_p, abs(oc_p.probe_chi - ref_p) / max(1.0, abs(ref_p)))
            probe_q = max(probe_q, abs(oc_q.probe_chi - ref_q) / max(1.0, abs(ref_q)))
        checks += [
            CheckResult("oracle_block_p_qcl", block_p, oracle_tol, block_p <= oracle_tol),
            CheckResult("oracle_block_q_qcl", block_q, oracle_tol, block_q <= oracle_tol),
            CheckResult("oracle_probe_p_qcl", probe_p, oracle_tol, probe_p <= oracle_tol),
            CheckResult("oracle_probe_q_qcl", probe_q, oracle_tol, probe_q <= oracle_tol),
        ]
    return VerificationReport(checks=tuple(checks))
