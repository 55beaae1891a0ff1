import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vortexeit import (
    DegenerateVelocity,
    DomainError,
    MediumParams,
    Regime,
    SingularRabi,
    classify_regime,
    detuning_matrix,
    eigen_velocities,
    from_physical,
    lg_ratio,
    rabi_matrix,
    total_rabi,
    velocity_matrix,
)
from vortexeit.medium import A_CRITICAL

from .conftest import F_STAR, RHO_STAR

radii = st.floats(0.0, 4.0)
angles = st.floats(-2 * math.pi, 2 * math.pi)


def test_lg_ratio_core_and_peak():
    assert lg_ratio(0.0, 1.0) == 0.0
    assert lg_ratio(RHO_STAR, 1.0) == pytest.approx(0.42888194248, abs=1e-11)
    assert lg_ratio(RHO_STAR, math.sqrt(2 * math.e)) == pytest.approx(1.0, abs=1e-15)


def test_lg_ratio_peak_by_grid_scan():
    rho = np.linspace(0, 5, 500001)
    f = lg_ratio(rho, 1.0)
    k = np.argmax(f)
    assert rho[k] == pytest.approx(RHO_STAR, abs=1e-5)
    assert f[k] == pytest.approx(F_STAR, rel=1e-9)
    # unimodal: increasing then decreasing
    d = np.diff(f)
    assert np.all(d[:k] > 0) and np.all(d[k:] < 0)


def test_lg_ratio_rejects_negative_radius():
    with pytest.raises(DomainError):
        lg_ratio(-0.1, 1.0)


def test_rabi_matrix_examples():
    p = MediumParams(a=1.0, S=0.3)
    np.testing.assert_allclose(rabi_matrix(0.0, 1.7, p),
                               [[0, 1], [np.exp(-0.6j), 0]], atol=1e-15)
    np.testing.assert_allclose(rabi_matrix(RHO_STAR, 0.0, MediumParams(a=1.0)),
                               [[F_STAR, 1], [1, F_STAR]], atol=1e-15)
    p = MediumParams(a=1.0, S=math.pi / 2, l=1)
    np.testing.assert_allclose(rabi_matrix(RHO_STAR, math.pi / 2, p),
                               [[F_STAR * 1j, 1], [-1, -F_STAR * 1j]], atol=1e-15)


@given(radii, angles, st.floats(0, 3), angles, st.integers(-3, 3))
def test_rabi_matrix_moduli_and_phases(rho, phi, a, S, l):
    om = rabi_matrix(rho, phi, MediumParams(a=a, S=S, l=l))
    assert abs(om[0, 0]) == pytest.approx(abs(om[1, 1]))
    assert abs(om[0, 1]) == pytest.approx(abs(om[1, 0])) == pytest.approx(1.0)


def test_total_rabi():
    p = MediumParams(a=1.0)
    assert total_rabi(0.0, p) == 1.0
    assert total_rabi(RHO_STAR, p) == pytest.approx(1.088090, abs=1e-6)
    assert total_rabi(40.0, MediumParams(a=5.0)) == 1.0


def test_velocity_matrix_examples():
    p = MediumParams(a=1.0, S=0.0)
    np.testing.assert_allclose(velocity_matrix(0.0, 0.4, p), np.eye(2), atol=1e-15)
    f = F_STAR
    v = velocity_matrix(RHO_STAR, 0.0, p)
    np.testing.assert_allclose(v, [[1 + f * f, 2 * f], [2 * f, 1 + f * f]], atol=1e-15)
    np.testing.assert_allclose(np.linalg.eigvalsh(v), [(1 - f) ** 2, (1 + f) ** 2], rtol=1e-14)


@settings(max_examples=200)
@given(radii, angles, st.floats(0, 2.3), angles)
def test_velocity_matrix_hermitian_and_matches_closed_form(rho, phi, a, S):
    p = MediumParams(a=a, S=S)
    v = velocity_matrix(rho, phi, p)
    np.testing.assert_allclose(v, v.conj().T, atol=1e-15)
    f = lg_ratio(rho, a)
    assert np.trace(v).real == pytest.approx(2 * (1 + f * f), rel=1e-14)
    vel = eigen_velocities(rho, p, strict=False)
    numeric = np.sort(np.linalg.eigvalsh(v))
    closed = np.sort([vel.v_plus, vel.v_minus])
    np.testing.assert_allclose(numeric, closed, rtol=1e-12, atol=1e-14)


@given(radii, st.floats(0, 2.3), angles)
def test_inverse_velocities_exact(rho, a, S):
    vel = eigen_velocities(rho, MediumParams(a=a, S=S), strict=False)
    f = lg_ratio(rho, a)
    assert vel.u_plus * (1 + f * f + 2 * f * math.cos(S)) == pytest.approx(1.0, rel=1e-15)
    if not vel.degenerate:
        assert vel.u_minus * (1 + f * f - 2 * f * math.cos(S)) == pytest.approx(1.0, rel=1e-15)


def test_eigen_velocities_examples():
    vel = eigen_velocities(RHO_STAR, MediumParams(a=1.0, S=0.0))
    assert vel.u_plus == pytest.approx(0.48979, abs=1e-5)
    assert vel.u_minus == pytest.approx(3.065831, abs=1e-6)
    assert vel.theta_mix == pytest.approx(math.atan(F_STAR))
    assert vel.v0_local == pytest.approx(1 + F_STAR**2)

    for rho in (0.0, 0.3, RHO_STAR, 2.0):
        vel = eigen_velocities(rho, MediumParams(a=1.5, S=math.pi / 2))
        assert vel.v_plus == pytest.approx(vel.v_minus, abs=1e-15)


def test_eigen_velocities_double_lambda():
    p = MediumParams(a=A_CRITICAL, S=0.0)
    with pytest.raises(DegenerateVelocity):
        eigen_velocities(RHO_STAR, p)
    vel = eigen_velocities(RHO_STAR, p, strict=False)
    assert vel.degenerate
    assert vel.v_minus == pytest.approx(0.0, abs=1e-15)


def test_detuning_matrix_examples():
    p = MediumParams(a=1.0, S=0.2, delta_tilde=(0.0, 0.0))
    np.testing.assert_allclose(detuning_matrix(0.5, 0.3, p), np.zeros((2, 2)), atol=1e-15)
    p = MediumParams(a=1.0, S=0.2, delta_tilde=(0.7, 0.7))
    np.testing.assert_allclose(detuning_matrix(0.5, 0.3, p), 0.7 * np.eye(2), atol=1e-14)
    p = MediumParams(a=1.0, S=0.2, delta_tilde=(0.3, -1.1))
    np.testing.assert_allclose(detuning_matrix(0.0, 0.0, p), np.diag([-1.1, 0.3]), atol=1e-15)


@settings(max_examples=200)
@given(radii, angles, st.floats(0, 3), angles, st.floats(-5, 5), st.floats(-5, 5))
def test_detuning_matrix_is_similar_to_delta(rho, phi, a, S, d1, d2):
    p = MediumParams(a=a, S=S, delta_tilde=(d1, d2))
    om = rabi_matrix(rho, phi, p)
    if abs(np.linalg.det(om)) <= 1e-6:
        return
    eig = np.sort_complex(np.linalg.eigvals(detuning_matrix(rho, phi, p)))
    np.testing.assert_allclose(eig, np.sort_complex(np.array([d1, d2], dtype=complex)),
                               atol=1e-10 * max(1.0, abs(d1), abs(d2)) / min(1.0, abs(np.linalg.det(om))))


def test_detuning_matrix_singular():
    with pytest.raises(SingularRabi):
        detuning_matrix(RHO_STAR, 0.0, MediumParams(a=A_CRITICAL, S=0.0, delta_tilde=(1, 2)))


def test_classify_regime_thresholds():
    assert classify_regime(0.0, MediumParams(a=1.0, S=0.4)) is Regime.VORTEX_CORE
    assert classify_regime(RHO_STAR, MediumParams(a=A_CRITICAL, S=0.0)) is Regime.DOUBLE_LAMBDA
    assert classify_regime(RHO_STAR, MediumParams(a=A_CRITICAL, S=math.pi)) is Regime.DOUBLE_LAMBDA
    assert classify_regime(RHO_STAR, MediumParams(a=1.0, S=0.0)) is Regime.GENERIC


@given(st.floats(1e-3, 4.0), st.floats(0.01, 5.0), angles)
def test_independent_tripods_everywhere_at_half_pi(rho, a, phi):
    p = MediumParams(a=a, S=math.pi / 2)
    assert classify_regime(rho, p, phi) is Regime.INDEPENDENT_TRIPODS


def test_params_validation():
    with pytest.raises(DomainError):
        MediumParams(alpha=0.0)
    with pytest.raises(DomainError):
        MediumParams(a=-1.0)
    with pytest.raises(DomainError):
        MediumParams(epsilon=-0.1)
    with pytest.raises(DomainError):
        MediumParams(l=1.5)
    assert MediumParams(alpha=math.inf).alpha == math.inf


def test_from_physical_round_trip():
    c, g2n, gamma, L, om12, dw = 3e8, 4e16, 3e7, 1e-4, 2e7, 5e4
    kw = from_physical(g2n=g2n, gamma=gamma, length=L, omega12=om12, delta_omega=dw, c=c,
                       delta=(1e3, -2e3))
    v0 = c * om12**2 / g2n
    assert kw["xi"] == pytest.approx(dw * L / v0)
    assert kw["alpha"] == pytest.approx(2 * g2n * L / (c * gamma))
    assert kw["gamma_tilde"] == pytest.approx(gamma * L / v0)
    assert kw["epsilon"] == pytest.approx(v0 / c)
    # gamma~ and alpha are tied through the Rabi frequency: gamma~ alpha = 2 (omega L / v0)^2
    assert kw["gamma_tilde"] * kw["alpha"] == pytest.approx(2 * (om12 * L / v0) ** 2)
    MediumParams(a=1.0, **kw)
