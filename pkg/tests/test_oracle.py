"""Truncated number-basis cross-check of the coefficient dynamics."""

import math

import numpy as np
import pytest

from photonbox import (
    BoxParams,
    ConfigError,
    FreeFall,
    Harmonic,
    InvalidTime,
    OracleConfig,
    Pair,
    PhysConstants,
    StepError,
    build_workspace,
    commutator_closed,
    oracle_commutator,
    oracle_evolve,
)


@pytest.fixture(scope="module")
def consts():
    return PhysConstants(hbar=1.0, c=1.0, g=1.0)


@pytest.fixture(scope="module")
def workspace(consts):
    return build_workspace(OracleConfig(n=40, buffer=6, step=1e-3), consts)


def restricted(ws, mat):
    r = ws.config.n - ws.config.buffer
    return mat[:r, :r]


# ---------------------------------------------------------------------------
# workspace construction
# ---------------------------------------------------------------------------


def test_ccr_block_within_tolerance(consts):
    ws = build_workspace(OracleConfig(n=60, buffer=8), consts)
    comm = (ws.q0 @ ws.p0 - ws.p0 @ ws.q0) / (1j * 1.0)
    r = ws.config.n - ws.config.buffer
    dev = np.max(np.abs(comm[:r, :r] - np.eye(r)))
    assert dev < 1e-10


def test_small_workspace_builds(consts):
    ws = build_workspace(OracleConfig(n=16, buffer=2), consts)
    assert ws.q0.shape == (16, 16)


def test_config_guards():
    with pytest.raises(ConfigError):
        OracleConfig(n=8)
    with pytest.raises(ConfigError):
        OracleConfig(buffer=0)
    with pytest.raises(ConfigError):
        OracleConfig(n=16, buffer=8)
    with pytest.raises(ConfigError):
        OracleConfig(scale=0.0)
    with pytest.raises(ConfigError):
        OracleConfig(step=-1.0)


def test_operators_hermitian(workspace):
    for mat in (workspace.q0, workspace.p0):
        assert np.max(np.abs(mat - mat.conj().T)) < 1e-10


def test_coherent_state_normalized(workspace):
    assert np.linalg.norm(workspace.coherent) == pytest.approx(1.0, rel=1e-12)


# ---------------------------------------------------------------------------
# evolution
# ---------------------------------------------------------------------------


def test_zero_time_returns_initial_operators(workspace, consts):
    box = BoxParams(M=1000.0, m=1.0, potential=FreeFall())
    fr = oracle_evolve(workspace, consts, box, 0.0)
    assert np.array_equal(fr.q, workspace.q0)
    assert np.array_equal(fr.p, workspace.p0)
    assert np.all(fr.qcl == 0.0)


def test_negative_time_rejected(workspace, consts):
    box = BoxParams(M=1000.0, m=1.0, potential=FreeFall())
    with pytest.raises(InvalidTime):
        oracle_evolve(workspace, consts, box, -1.0)


def test_step_exceeding_time_rejected(workspace, consts):
    box = BoxParams(M=1000.0, m=1.0, potential=FreeFall())
    with pytest.raises(StepError):
        oracle_evolve(workspace, consts, box, 1e-4)


def test_free_fall_matrices_match_closed_form(workspace, consts):
    # Q(t) = q0 + t/M p0 - g t^2/(2M) m, P(t) = p0 - g t m
    box = BoxParams(M=1000.0, m=1.0, potential=FreeFall())
    fr = oracle_evolve(workspace, consts, box, 1.0)
    eye = np.eye(workspace.config.n)
    want_q = workspace.q0 + workspace.p0 / 1000.0 - 0.0005 * eye
    want_p = workspace.p0 - 1.0 * eye
    assert np.max(np.abs(restricted(workspace, fr.q - want_q))) < 1e-9
    assert np.max(np.abs(restricted(workspace, fr.p - want_p))) < 1e-9


def test_evolved_operators_stay_hermitian(workspace, consts):
    box = BoxParams(M=1000.0, m=1.0, potential=Harmonic(k=1000.0))
    fr = oracle_evolve(workspace, consts, box, 1.0)
    for mat in (fr.q, fr.p, fr.qcl):
        assert np.max(np.abs(mat - mat.conj().T)) < 1e-10


def test_clock_reduces_to_time_without_gravity(workspace):
    consts0 = PhysConstants(hbar=1.0, c=1.0, g=0.0)
    box = BoxParams(M=1000.0, m=1.0, potential=FreeFall())
    fr = oracle_evolve(workspace, consts0, box, 1.5)
    dev = np.max(np.abs(restricted(workspace, fr.qcl - 1.5 * np.eye(workspace.config.n))))
    assert dev < 1e-10


# ---------------------------------------------------------------------------
# commutators
# ---------------------------------------------------------------------------


def test_commutator_block_matches_closed_free_fall(workspace, consts):
    box = BoxParams(M=1000.0, m=1.0, potential=FreeFall())
    fr = oracle_evolve(workspace, consts, box, 1.0)
    ref = commutator_closed(Pair.P_QCL, consts, box, 1.0).chi
    res = oracle_commutator(workspace, fr.p, fr.qcl, workspace.vacuum, chi_ref=ref)
    assert res.block_dev < 1e-6
    assert res.probe_chi.real == pytest.approx(1.0, abs=1e-6)
    assert abs(res.probe_chi.imag) < 1e-6


def test_commutator_block_matches_closed_harmonic(workspace, consts):
    box = BoxParams(M=1000.0, m=1.0, potential=Harmonic(k=1000.0))
    t = math.pi / 2
    fr = oracle_evolve(workspace, consts, box, t)
    ref = commutator_closed(Pair.Q_QCL, consts, box, t).chi
    res = oracle_commutator(workspace, fr.q, fr.qcl, workspace.coherent, chi_ref=ref)
    assert res.block_dev < 1e-6
    assert res.probe_chi.real == pytest.approx(1e-3, abs=1e-6)


def test_probe_without_reference_skips_block(workspace):
    res = oracle_commutator(workspace, workspace.q0, workspace.p0, workspace.vacuum)
    assert res.block_dev is None
    assert res.probe_chi.real == pytest.approx(1.0, rel=1e-10)
