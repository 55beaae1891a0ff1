"""Closed-form propagation of the two-component probe through the cloud.

Under the adiabatic approximation with zero two-photon detuning the probe
column obeys dE/dz = i(K0 + Kx sx + Ky sy) E.  The generator has a Pauli
form, so its exponential and the transmissions for an E1-only input are
available in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedDetuning
from .medium import MediumParams, eigen_velocities

ADIABATICITY_WARN = 0.2
SINC_SERIES_BELOW = 1e-4

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

FLAG_DEGENERATE = 1
FLAG_ADIABATICITY = 2


def adiabaticity(params: MediumParams) -> float:
    """The expansion parameter 2 xi^2 / alpha (zero for the lossless limit)."""
    return 2.0 * params.xi**2 / params.alpha


@dataclass(frozen=True)
class KCoefficients:
    """Pauli components of the generator, each multiplied by the cloud length."""

    k0L: np.ndarray | complex
    kxL: np.ndarray | complex
    kyL: np.ndarray | complex
    adiabatic_warning: bool = False

    @property
    def kperpL(self):
        return np.sqrt(np.square(self.kxL) + np.square(self.kyL))

    def as_matrix(self):
        k0, kx, ky = (np.asarray(k)[..., None, None] for k in (self.k0L, self.kxL, self.kyL))
        return k0 * IDENTITY + kx * SIGMA_X + ky * SIGMA_Y


@dataclass(frozen=True)
class TransferResult:
    t1: np.ndarray | complex
    t2: np.ndarray | complex
    flags: np.ndarray | int = 0

    @property
    def i1(self):
        return np.abs(self.t1) ** 2

    @property
    def i2(self):
        return np.abs(self.t2) ** 2


def _reject_detuning(params: MediumParams):
    if params.has_detuning:
        raise UnsupportedDetuning(
            "closed-form coefficients assume zero two-photon detuning; "
            "use the exact oracle for delta_tilde != 0")


def k_coefficients(rho, phi, params: MediumParams, *, strict=True) -> KCoefficients:
    _reject_detuning(params)
    vel = eigen_velocities(rho, params, strict=strict)
    xi = params.xi
    loss = 2.0 * xi / params.alpha
    up, um = np.asarray(vel.u_plus), np.asarray(vel.u_minus)
    with np.errstate(invalid="ignore"):
        k0 = xi * params.epsilon + 0.5 * xi * (up + um + 1j * loss * (up**2 + um**2))
        radial = 0.5 * xi * (up - um + 1j * loss * (up**2 - um**2))
    angle = params.S + params.l * np.asarray(phi, dtype=float)
    kx = radial * np.cos(angle)
    ky = -radial * np.sin(angle)
    k0, kx, ky = np.broadcast_arrays(k0, kx, ky)
    if not k0.ndim:
        k0, kx, ky = complex(k0), complex(kx), complex(ky)
    return KCoefficients(k0, kx, ky, adiabaticity(params) > ADIABATICITY_WARN)


def dispersion(k: KCoefficients, *, branch=1):
    """Plane-wave wavenumbers (K0 + Kperp, K0 - Kperp), times L."""
    kperp = branch * k.kperpL
    return k.k0L + kperp, k.k0L - kperp


def _sinc(x):
    """sin(x)/x for complex x, by series near zero."""
    x = np.asarray(x, dtype=complex)
    small = np.abs(x) < SINC_SERIES_BELOW
    safe = np.where(small, 1.0, x)
    x2 = x * x
    out = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)
    return out if out.ndim else complex(out)


def transfer_matrix(k: KCoefficients, *, branch=1):
    """exp(i(K0 + Kx sx + Ky sy)L) evaluated in closed form."""
    kperp = branch * np.asarray(k.kperpL)
    k0, kx, ky = (np.asarray(v)[..., None, None] for v in (k.k0L, k.kxL, k.kyL))
    c = np.cos(kperp)[..., None, None]
    s = np.asarray(_sinc(kperp))[..., None, None]
    return np.exp(1j * k0) * (c * IDENTITY + 1j * s * (kx * SIGMA_X + ky * SIGMA_Y))


def transmissions(rho, phi, params: MediumParams, *, strict=True, branch=1) -> TransferResult:
    """Transmission amplitudes of both components for an E1-only input."""
    k = k_coefficients(rho, phi, params, strict=strict)
    kperp = branch * np.asarray(k.kperpL)
    with np.errstate(invalid="ignore", over="ignore"):
        phase = np.exp(1j * np.asarray(k.k0L))
        t1 = phase * np.cos(kperp)
        # (Kx + iKy) sin(Kperp)/Kperp is even in the branch of Kperp
        t2 = 1j * (np.asarray(k.kxL) + 1j * np.asarray(k.kyL)) * _sinc(kperp) * phase
    flags = np.full(np.shape(t1), FLAG_ADIABATICITY if k.adiabatic_warning else 0)
    if not strict:
        vel = eigen_velocities(rho, params, strict=False)
        bad = np.broadcast_to(np.asarray(vel.degenerate), np.shape(t1))
        flags = flags | np.where(bad, FLAG_DEGENERATE, 0)
        t1 = np.where(bad, np.nan, t1)
        t2 = np.where(bad, np.nan, t2)
    if not np.ndim(t1):
        return TransferResult(complex(t1), complex(t2), int(flags))
    return TransferResult(t1, t2, flags)


def t2_small_rho(rho, phi, params: MediumParams):
    """Leading term of the generated amplitude near the vortex core."""
    xi, alpha = params.xi, params.alpha
    rho = np.asarray(rho, dtype=float)
    phi = np.asarray(phi, dtype=float)
    exponent = (-1j * params.l * phi - 1j * params.S + 1j * xi * params.epsilon
                + 1j * xi * (1.0 + 2j * xi / alpha))
    out = (-2j * xi * params.a * rho * math.cos(params.S) * np.exp(exponent)
           * (1.0 + 4j * xi / alpha))
    return out if np.ndim(out) else complex(out)
