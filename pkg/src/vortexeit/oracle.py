"""Reference propagators used to check the closed-form transfer results.

Two routes are provided.  ``exact_generator`` solves the monochromatic
linear response of the full atomic equations without eliminating the
excited states adiabatically, so it keeps every order in xi/alpha and
xi/gamma_tilde.  ``ode_propagate`` integrates dE/dz = iG(z)E with classical
RK4, independent of any matrix exponential.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DegenerateVelocity, DomainError, SingularElimination
from .medium import TOL_SINGULAR, MediumParams, rabi_matrix, velocity_matrix
from .transfer import TransferResult

COND_MAX = 1e12
EIGVEC_COND_MAX = 1e8


def expm2(a):
    """Matrix exponential of a (stack of) small dense complex matrices.

    Uses the eigen-decomposition and falls back to scaling and squaring
    (scipy) wherever the eigenvector matrix is badly conditioned.
    """
    a = np.asarray(a, dtype=complex)
    w, v = np.linalg.eig(a)
    cond = np.linalg.cond(v)
    out = (v * np.exp(w)[..., None, :]) @ np.linalg.inv(v)
    bad = ~(cond < EIGVEC_COND_MAX)
    if np.any(bad):
        if a.ndim == 2:
            return scipy.linalg.expm(a)
        out[bad] = scipy.linalg.expm(a[bad])
    return out


def exact_generator(rho, phi, params: MediumParams):
    """z-generator of the probe column from the un-eliminated atomic response.

    Returns G (shape ``(..., 2, 2)``) with dE/dz~ = iGE, z~ = z/L.
    """
    xi = params.xi
    gt = params.gamma_tilde
    eye = np.eye(2, dtype=complex)
    # (Delta omega + i gamma), rescaled by c/(g^2 n L)
    shift = 2.0 * xi / (params.alpha * gt) + 2j / params.alpha
    if not params.has_detuning:
        # G = xi*(eps + (v - shift*xi)^-1); finite as xi -> 0
        m = velocity_matrix(rho, phi, params) - shift * xi * eye
        _check_conditioning(m)
        return xi * (params.epsilon * eye + np.linalg.inv(m))
    gap = np.asarray(params.delta_tilde) - xi
    if np.any(np.abs(gap) < TOL_SINGULAR):
        raise SingularElimination("two-photon detuning equals the probe detuning")
    omega = rabi_matrix(rho, phi, params)
    m = (shift * eye
         + (omega * (1.0 / gap)) @ np.swapaxes(omega.conj(), -1, -2))
    _check_conditioning(m)
    return xi * params.epsilon * eye - np.linalg.inv(m)


def _check_conditioning(m):
    cond = np.linalg.cond(m)
    if np.any(~(cond < COND_MAX)):
        raise SingularElimination(f"elimination matrix condition number {np.max(cond):.3g}")


def analytic_generator(rho, phi, params: MediumParams):
    """Second-order adiabatic generator xi*eps + xi v^-1 + i(2xi^2/alpha) v^-2."""
    v = velocity_matrix(rho, phi, params)
    det = (v[..., 0, 0] * v[..., 1, 1] - v[..., 0, 1] * v[..., 1, 0]).real
    half_trace = 0.5 * (v[..., 0, 0] + v[..., 1, 1]).real
    if np.any(det < TOL_SINGULAR * half_trace**2):
        raise DegenerateVelocity("velocity matrix is singular")
    vinv = np.linalg.inv(v)
    eye = np.eye(2, dtype=complex)
    xi = params.xi
    return (xi * params.epsilon * eye + xi * vinv
            + 1j * (2.0 * xi**2 / params.alpha) * (vinv @ vinv))


def ode_propagate(generator, e0, steps: int):
    """Integrate dE/dz~ = iG(z~)E over z~ in [0, 1] with fixed-step RK4.

    ``generator`` is either a constant matrix (or stack of matrices) or a
    callable returning one for a given z~.
    """
    if steps < 16:
        raise DomainError("at least 16 steps are required")
    if callable(generator):
        gen = generator
    else:
        fixed = np.asarray(generator, dtype=complex)
        gen = lambda z: fixed  # noqa: E731

    def rhs(z, e):
        return 1j * (gen(z) @ e[..., None])[..., 0]

    e = np.asarray(e0, dtype=complex)
    h = 1.0 / steps
    for n in range(steps):
        z = n * h
        k1 = rhs(z, e)
        k2 = rhs(z + 0.5 * h, e + 0.5 * h * k1)
        k3 = rhs(z + 0.5 * h, e + 0.5 * h * k2)
        k4 = rhs(z + h, e + h * k3)
        e = e + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return e


def exact_transmissions(rho, phi, params: MediumParams) -> TransferResult:
    g = exact_generator(rho, phi, params)
    column = expm2(1j * g)[..., :, 0]
    t1, t2 = column[..., 0], column[..., 1]
    if not np.ndim(t1):
        return TransferResult(complex(t1), complex(t2), 0)
    return TransferResult(t1, t2, np.zeros(np.shape(t1), dtype=int))
