"""Independent truncated-Fock-basis check of the commutator engine.

The coefficient engine never touches a Hilbert space; this module does, on
purpose.  It builds explicit position and momentum matrices from ladder
operators in a truncated number basis, integrates the same backward-time
equations of motion as honest matrix ODEs, assembles the clock matrix by
quadrature, and evaluates commutators by actual matrix multiplication.
Away from the truncation corner the matrix commutators must reproduce the
engine's chi values, which is what the scenario-level verification uses.

Truncation contaminates the last basis states, so all block comparisons
are restricted to the leading (n - buffer) x (n - buffer) block, and probe
expectation values use vectors with negligible weight near the edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InvalidTime, StepError
from .operators import BoxParams, PhysConstants

__all__ = [
    "OracleConfig",
    "OracleWorkspace",
    "OracleFrame",
    "OracleCommutator",
    "build_workspace",
    "oracle_evolve",
    "oracle_commutator",
]

_COHERENT_AMPLITUDE = 0.5


@dataclass(frozen=True)
class OracleConfig:
    """Truncation size, edge buffer, length scale, and ODE step."""

    n: int = 60
    buffer: int = 8
    scale: float = 1.0
    step: float = 1e-3

    def __post_init__(self) -> None:
        if self.n < 16:
            raise ConfigError(f"n must be >= 16, got {self.n}")
        if self.buffer < 1:
            raise ConfigError(f"buffer must be >= 1, got {self.buffer}")
        if self.n <= 2 * self.buffer:
            raise ConfigError(f"n must exceed 2*buffer, got n={self.n}, buffer={self.buffer}")
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise ConfigError(f"scale must be finite and > 0, got {self.scale!r}")
        if not (math.isfinite(self.step) and self.step > 0):
            raise ConfigError(f"step must be finite and > 0, got {self.step!r}")


@dataclass(frozen=True)
class OracleWorkspace:
    """Position/momentum matrices, probe vectors, and their configuration."""

    q0: np.ndarray
    p0: np.ndarray
    vacuum: np.ndarray
    coherent: np.ndarray
    config: OracleConfig
    hbar: float


@dataclass(frozen=True)
class OracleFrame:
    """Matrix-valued Q(t), P(t), Qcl(t) at backward time t."""

    t: float
    q: np.ndarray
    p: np.ndarray
    qcl: np.ndarray


@dataclass(frozen=True)
class OracleCommutator:
    """Probe expectation of a matrix commutator, in the chi convention.

    ``probe_chi`` is <probe| [A, B] |probe> / (i*hbar), which for an exact
    canonical pair is the engine's real chi.  ``block_dev`` (when a
    reference was supplied) is the max deviation of the restricted block of
    [A, B]/(i*hbar) from chi_ref times the identity.
    """

    probe_chi: complex
    block_dev: float | None


def build_workspace(config: OracleConfig, consts: PhysConstants) -> OracleWorkspace:
    """Build ladder-operator matrices and probe vectors.

    Q0 = scale*(a + a^dag)/sqrt(2) and P0 = (hbar/scale)*(a - a^dag)/(i*sqrt(2)),
    so that [Q0, P0] = i*hbar exactly except in the last diagonal entry.
    The restricted commutator block is self-checked against the identity
    before the workspace is returned.

    Raises
    ------
    ConfigError
        If the configuration is unusable or the self-check fails.
    """
    n = config.n
    lower = np.diag(np.sqrt(np.arange(1.0, n)), 1).astype(complex)
    raise_op = lower.conj().T
    sqrt2 = math.sqrt(2.0)
    q0 = config.scale * (lower + raise_op) / sqrt2
    p0 = (consts.hbar / config.scale) * (lower - raise_op) / (1j * sqrt2)

    vacuum = np.zeros(n, dtype=complex)
    vacuum[0] = 1.0
    amps = np.empty(n)
    amps[0] = 1.0
    for j in range(1, n):
        amps[j] = amps[j - 1] * _COHERENT_AMPLITUDE / math.sqrt(j)
    coherent = (amps / np.linalg.norm(amps)).astype(complex)

    r = n - config.buffer
    ccr = (q0 @ p0 - p0 @ q0) / (1j * consts.hbar)
    dev = float(np.abs(ccr[:r, :r] - np.eye(r)).max())
    if dev > 1e-10:
        raise ConfigError(f"restricted canonical commutator off by {dev}")
    return OracleWorkspace(
        q0=q0, p0=p0, vacuum=vacuum, coherent=coherent, config=config, hbar=consts.hbar
    )


def oracle_evolve(
    workspace: OracleWorkspace,
    consts: PhysConstants,
    box: BoxParams,
    t: float,
) -> OracleFrame:
    """Integrate the matrix equations of motion to backward time t.

    Q and P follow dQ/dt = P/M, dP/dt = -m*g*I - k*Q under classical
    fourth-order stepping; the clock matrix is then assembled as

        Qcl(t) = t*I - (g/c**2) * integral of Q over [0, t]

    with the integral evaluated by composite Simpson quadrature over the
    ODE nodes (the step count is forced even so panels pair up).

    Raises
    ------
    InvalidTime
        If t is negative or not finite.
    StepError
        If the configured step exceeds a positive target time.
    """
    if not math.isfinite(t) or t < 0:
        raise InvalidTime(f"elapsed time must be finite and >= 0, got {t!r}")
    cfg = workspace.config
    n_dim = cfg.n
    eye = np.eye(n_dim, dtype=complex)
    if t == 0:
        return OracleFrame(t=0.0, q=workspace.q0.copy(), p=workspace.p0.copy(), qcl=np.zeros_like(eye))
    if cfg.step > t:
        raise StepError(f"step {cfg.step!r} exceeds target time {t!r}")

    steps = max(2, math.ceil(t / cfg.step - 1e-12))
    if steps % 2:
        steps += 1
    h = t / steps

    M = box.M
    k = box.spring_k
    g = consts.g
    c2 = consts.c * consts.c
    mg_eye = (box.m * g) * eye

    q = workspace.q0.copy()
    p = workspace.p0.copy()
    simpson = q.copy()  # node 0, weight 1
    for i in range(1, steps + 1):
        k1q = p / M
        k1p = -mg_eye - k * q
        q2 = q + 0.5 * h * k1q
        p2 = p + 0.5 * h * k1p
        k2q = p2 / M
        k2p = -mg_eye - k * q2
        q3 = q + 0.5 * h * k2q
        p3 = p + 0.5 * h * k2p
        k3q = p3 / M
        k3p = -mg_eye - k * q3
        q4 = q + h * k3q
        p4 = p + h * k3p
        k4q = p4 / M
        k4p = -mg_eye - k * q4
        q = q + (h / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
        p = p + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        weight = 1.0 if i == steps else (4.0 if i % 2 else 2.0)
        simpson += weight * q
    qcl = t * eye - (g / c2) * (h / 3.0) * simpson
    return OracleFrame(t=t, q=q, p=p, qcl=qcl)


def oracle_commutator(
    workspace: OracleWorkspace,
    a: np.ndarray,
    b: np.ndarray,
    probe: np.ndarray,
    chi_ref: float | None = None,
) -> OracleCommutator:
    """Evaluate [A, B] by matrix multiplication, in the chi convention.

    Parameters
    ----------
    workspace : OracleWorkspace
        Supplies hbar and the restricted-block size.
    a, b : ndarray
        Matrices to commute.
    probe : ndarray
        Normalized state vector for the expectation value.
    chi_ref : float, optional
        Engine value to compare the restricted block against; when given,
        ``block_dev`` reports max |[A, B]/(i*hbar) - chi_ref*I| over the
        leading (n - buffer) block.
    """
    chi_mat = (a @ b - b @ a) / (1j * workspace.hbar)
    probe_chi = complex(probe.conj() @ (chi_mat @ probe))
    block_dev = None
    if chi_ref is not None:
        r = workspace.config.n - workspace.config.buffer
        block = chi_mat[:r, :r]
        block_dev = float(np.abs(block - chi_ref * np.eye(r)).max())
    return OracleCommutator(probe_chi=probe_chi, block_dev=block_dev)
