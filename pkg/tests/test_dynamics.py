"""Backward-time frames: closed forms, RK4 transfer maps, commutator ODEs."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from photonbox import (
    BoxParams,
    FreeFall,
    Harmonic,
    InvalidStep,
    InvalidTime,
    NumericOptions,
    Pair,
    PhysConstants,
    commutator,
    commutator_closed,
    commutator_ode,
    commutator_ode_grid,
    evolve_closed,
    evolve_numeric,
    evolve_numeric_grid,
)

FIELDS = ("a_q", "a_p", "a_cl", "a_1", "a_m")


def frame_dev(a, b):
    return max(
        abs(getattr(getattr(a, n), f) - getattr(getattr(b, n), f))
        for n in ("Q", "P", "Qcl")
        for f in FIELDS
    )


# ---------------------------------------------------------------------------
# closed forms, frozen coefficients
# ---------------------------------------------------------------------------


def test_free_fall_frame_at_t2(consts, ff_box):
    fr = evolve_closed(consts, ff_box, 2.0)
    assert fr.Q.a_q == 1.0
    assert fr.Q.a_p == 0.002
    assert fr.Q.a_m == -0.002
    assert fr.Q.a_cl == 0.0 and fr.Q.a_1 == 0.0
    assert fr.P.a_p == 1.0
    assert fr.P.a_m == -2.0
    assert fr.P.a_q == 0.0
    assert fr.Qcl.a_cl == 1.0
    assert fr.Qcl.a_1 == 2.0
    assert fr.Qcl.a_q == -2.0
    assert fr.Qcl.a_p == -0.002
    assert fr.Qcl.a_m == pytest.approx(8.0 / 6000.0, rel=1e-15)


def test_harmonic_frame_at_quarter_period(consts, ho_box):
    t = math.pi / 2
    fr = evolve_closed(consts, ho_box, t)
    assert abs(fr.Q.a_q) < 1e-15
    assert fr.Q.a_p == pytest.approx(1e-3, rel=1e-14)
    assert fr.Q.a_m == pytest.approx(-1e-3, rel=1e-14)
    assert fr.P.a_q == pytest.approx(-1000.0, rel=1e-14)
    assert abs(fr.P.a_p) < 1e-13
    assert fr.P.a_m == pytest.approx(-1.0, rel=1e-14)
    assert fr.Qcl.a_cl == 1.0
    assert fr.Qcl.a_1 == pytest.approx(t, rel=1e-15)
    assert fr.Qcl.a_q == pytest.approx(-1.0, rel=1e-14)
    assert fr.Qcl.a_p == pytest.approx(-1e-3, rel=1e-14)
    assert fr.Qcl.a_m == pytest.approx((t - 1.0) / 1000.0, rel=1e-12)


def test_frame_at_zero_is_identity(consts, ff_box, ho_box):
    for box in (ff_box, ho_box):
        fr = evolve_closed(consts, box, 0.0)
        assert fr.Q.a_q == 1.0 and fr.Q.a_p == 0.0 and fr.Q.a_m == 0.0
        assert fr.P.a_p == 1.0 and fr.P.a_q == 0.0 and fr.P.a_m == 0.0
        assert fr.Qcl.a_cl == 1.0 and fr.Qcl.a_1 == 0.0 and fr.Qcl.a_q == 0.0


def test_negative_time_rejected(consts, ff_box):
    with pytest.raises(InvalidTime):
        evolve_closed(consts, ff_box, -0.5)


# ---------------------------------------------------------------------------
# commutators
# ---------------------------------------------------------------------------


def test_free_fall_commutators_grow(consts, ff_box):
    for t in (0.5, 1.0, 2.0, 3.0):
        assert commutator_closed(Pair.P_QCL, consts, ff_box, t).chi == t
        assert commutator_closed(Pair.Q_QCL, consts, ff_box, t).chi == t * t / 2000.0


def test_harmonic_commutators_oscillate(consts, ho_box):
    for t in (0.5, 1.0, 2.0, math.pi):
        assert commutator_closed(Pair.P_QCL, consts, ho_box, t).chi == math.sin(t)
        expected = (1.0 - math.cos(t)) / 1000.0
        assert commutator_closed(Pair.Q_QCL, consts, ho_box, t).chi == expected


def test_commutators_vanish_at_zero(consts, ff_box, ho_box):
    for box in (ff_box, ho_box):
        for pair in Pair:
            assert commutator_closed(pair, consts, box, 0.0).chi == 0.0


def test_frame_commutator_matches_closed(consts, ff_box, ho_box):
    # chi computed from the frame coefficients agrees with the closed form
    for box in (ff_box, ho_box):
        for t in (0.3, 1.7, 2.9):
            fr = evolve_closed(consts, box, t)
            for pair, op in ((Pair.P_QCL, fr.P), (Pair.Q_QCL, fr.Q)):
                direct = commutator(op, fr.Qcl).chi
                closed = commutator_closed(pair, consts, box, t).chi
                assert direct == pytest.approx(closed, rel=1e-14, abs=1e-18)


def test_symplectic_invariant_preserved(consts, ff_box, ho_box):
    # [Q(t), P(t)] = i hbar at all times
    for box in (ff_box, ho_box):
        for t in (0.0, 0.5, 2.0, 5.0):
            fr = evolve_closed(consts, box, t)
            assert fr.symplectic_chi() == pytest.approx(1.0, rel=1e-13)


def test_zero_gravity_decouples_clock(ff_box, ho_box):
    consts0 = PhysConstants(hbar=1.0, c=1.0, g=0.0)
    for box in (ff_box, ho_box):
        for t in (0.5, 2.0):
            fr = evolve_closed(consts0, box, t)
            assert fr.Qcl.a_q == 0.0 and fr.Qcl.a_p == 0.0 and fr.Qcl.a_m == 0.0
            assert commutator_closed(Pair.P_QCL, consts0, box, t).chi == 0.0
            assert commutator_closed(Pair.Q_QCL, consts0, box, t).chi == 0.0


def test_harmonic_tends_to_free_fall_for_soft_spring(consts, ff_box):
    # P row deviates by ~k*t (spring impulse); Q row by ~(omega t)^2 / 2
    t = 1.0
    ff = evolve_closed(consts, ff_box, t)
    for k in (1e-6, 1e-8):
        soft = BoxParams(M=1000.0, m=1.0, potential=Harmonic(k=k))
        fr = evolve_closed(consts, soft, t)
        assert frame_dev(fr, ff) <= 2.0 * k * t + 1e-15
    # quadratic smallness of the Q row, at a stiffness where the
    # (cos - 1)/k cancellation noise stays far below the bound
    soft = BoxParams(M=1000.0, m=1.0, potential=Harmonic(k=1e-4))
    fr = evolve_closed(consts, soft, t)
    q_dev = max(abs(getattr(fr.Q, f) - getattr(ff.Q, f)) for f in FIELDS)
    assert q_dev <= 2.0 * (soft.omega * t) ** 2


# ---------------------------------------------------------------------------
# numeric route
# ---------------------------------------------------------------------------


def test_numeric_matches_closed_free_fall(consts, ff_box):
    fr_n = evolve_numeric(consts, ff_box, 2.0, NumericOptions(step=1e-3))
    fr_c = evolve_closed(consts, ff_box, 2.0)
    assert frame_dev(fr_n, fr_c) < 1e-12


def test_numeric_matches_closed_harmonic(consts, ho_box):
    fr_n = evolve_numeric(consts, ho_box, 3.0, NumericOptions(step=1e-3))
    fr_c = evolve_closed(consts, ho_box, 3.0)
    assert frame_dev(fr_n, fr_c) < 1e-10


def test_numeric_grid_is_continuation(consts, ho_box):
    # emitting frames along a grid must agree with independent single runs
    ts = [0.0, 0.7, 1.4, 2.8]
    frames = evolve_numeric_grid(consts, ho_box, ts, NumericOptions(step=1e-3))
    assert [f.t for f in frames] == ts
    for f in frames:
        ref = evolve_closed(consts, ho_box, f.t)
        assert frame_dev(f, ref) < 1e-10


def test_ode_commutators_match_closed(consts, ff_box, ho_box):
    opts = NumericOptions(step=1e-3)
    for box in (ff_box, ho_box):
        for pair in Pair:
            got = commutator_ode(pair, consts, box, 2.0, opts).chi
            want = commutator_closed(pair, consts, box, 2.0).chi
            assert got == pytest.approx(want, rel=1e-10, abs=1e-14)


def test_ode_commutator_grid_shape(consts, ff_box):
    ts = [0.0, 1.0, 2.0]
    out = commutator_ode_grid(consts, ff_box, ts, NumericOptions(step=1e-3))
    assert out.shape == (3, 2)
    assert out[0, 0] == 0.0 and out[0, 1] == 0.0
    assert out[2, 0] == pytest.approx(2.0, rel=1e-12)


def test_step_larger_than_time_rejected(consts, ff_box):
    with pytest.raises(InvalidStep):
        evolve_numeric(consts, ff_box, 0.0005, NumericOptions(step=1e-3))


def test_nonpositive_step_rejected():
    with pytest.raises(InvalidStep):
        NumericOptions(step=0.0)


def test_rk4_order_four(consts, ho_box):
    # halving the step cuts the error by ~2^4
    t = 3.0
    ref = evolve_closed(consts, ho_box, t)
    err_h = frame_dev(evolve_numeric(consts, ho_box, t, NumericOptions(step=0.05)), ref)
    err_h2 = frame_dev(evolve_numeric(consts, ho_box, t, NumericOptions(step=0.025)), ref)
    assert 12.8 <= err_h / err_h2 <= 19.2


def test_free_fall_transfer_group_property(consts, ff_box):
    # evolving to t1+t2 equals composing the affine maps for t1 and t2
    def transfer(t):
        fr = evolve_closed(consts, ff_box, t)
        m = np.eye(5)
        for i, op in enumerate((fr.Q, fr.P, fr.Qcl)):
            m[i] = [op.a_q, op.a_p, op.a_cl, op.a_1, op.a_m]
        return m

    t1, t2 = 0.8, 1.7
    composed = transfer(t2) @ transfer(t1)
    direct = transfer(t1 + t2)
    assert np.max(np.abs(composed - direct)) < 1e-12


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

CONSTS = PhysConstants(hbar=1.0, c=1.0, g=1.0)
FF = BoxParams(M=1000.0, m=1.0, potential=FreeFall())
HO = BoxParams(M=1000.0, m=1.0, potential=Harmonic(k=1000.0))

times = st.floats(min_value=0.0, max_value=10.0, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(times)
def test_property_symplectic_free_fall(t):
    fr = evolve_closed(CONSTS, FF, t)
    assert abs(fr.symplectic_chi() - 1.0) < 1e-12


@settings(max_examples=60, deadline=None)
@given(times, st.floats(min_value=1.0, max_value=1e4, allow_nan=False))
def test_property_symplectic_harmonic(t, k):
    box = BoxParams(M=1000.0, m=1.0, potential=Harmonic(k=k))
    fr = evolve_closed(CONSTS, box, t)
    assert abs(fr.symplectic_chi() - 1.0) < 1e-10


@settings(max_examples=40, deadline=None)
@given(times)
def test_property_chi_consistency(t):
    fr = evolve_closed(CONSTS, HO, t)
    assert commutator(fr.P, fr.Qcl).chi == pytest.approx(
        commutator_closed(Pair.P_QCL, CONSTS, HO, t).chi, rel=1e-12, abs=1e-15
    )
