"""Control-beam geometry and the group-velocity matrix of a double-tripod medium.

Everything here is dimensionless.  Radii are measured in units of the
vortex beam width, velocities in units of the core group velocity v0(0),
and the Rabi matrix is normalized so that the non-vortex entry is unity.
All functions broadcast over numpy arrays of ``rho`` and ``phi``; matrices
are returned with the 2x2 block in the trailing two axes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateVelocity, DomainError, SingularRabi

TOL_SINGULAR = 1e-9

# radius at which the LG01 amplitude ratio peaks
RHO_STAR = 1.0 / math.sqrt(2.0)

# vortex strength at which the ratio reaches unity at RHO_STAR
A_CRITICAL = math.sqrt(2.0 * math.e)


@dataclass(frozen=True)
class MediumParams:
    """Dimensionless control-field and cloud configuration.

    ``alpha`` may be ``math.inf`` to switch off the non-adiabatic losses.
    """

    a: float = 1.0
    S: float = 0.0
    l: int = 1
    alpha: float = 100.0
    xi: float = 0.0
    epsilon: float = 0.0
    gamma_tilde: float = 1e4
    delta_tilde: tuple[float, float] = field(default=(0.0, 0.0))

    def __post_init__(self):
        if not self.a >= 0:
            raise DomainError(f"a must be >= 0, got {self.a}")
        if not self.alpha > 0:
            raise DomainError(f"alpha must be > 0, got {self.alpha}")
        if not self.epsilon >= 0:
            raise DomainError(f"epsilon must be >= 0, got {self.epsilon}")
        if not self.gamma_tilde > 0:
            raise DomainError(f"gamma_tilde must be > 0, got {self.gamma_tilde}")
        if int(self.l) != self.l:
            raise DomainError(f"winding number must be an integer, got {self.l}")
        if len(self.delta_tilde) != 2:
            raise DomainError("delta_tilde must hold two detunings")
        for name in ("a", "S", "xi", "epsilon"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        object.__setattr__(self, "l", int(self.l))
        object.__setattr__(self, "delta_tilde", tuple(float(d) for d in self.delta_tilde))

    @property
    def has_detuning(self) -> bool:
        return any(d != 0.0 for d in self.delta_tilde)


def from_physical(*, g2n, gamma, length, omega12, delta_omega, c=299792458.0,
                  delta=(0.0, 0.0)):
    """Map physical parameters onto the dimensionless set.

    ``g2n`` is g**2 times the atomic density, ``omega12`` the non-vortex Rabi
    frequency and ``delta`` the two-photon detunings; all in consistent SI
    units.  Returns a dict of keyword arguments for :class:`MediumParams`
    (``a``, ``S`` and ``l`` are geometric and must be supplied separately).
    """
    v0 = c * omega12**2 / g2n
    return {
        "xi": delta_omega * length / v0,
        "alpha": 2.0 * g2n * length / (c * gamma),
        "gamma_tilde": gamma * length / v0,
        "epsilon": v0 / c,
        "delta_tilde": (delta[0] * length / v0, delta[1] * length / v0),
    }


def lg_ratio(rho, a):
    """Amplitude ratio |Omega11|/|Omega12| of an LG01 vortex over a plane wave."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0) or np.any(np.isnan(rho)):
        raise DomainError("rho must be non-negative")
    out = a * rho * np.exp(-rho * rho)
    return out if out.ndim else float(out)


def rabi_matrix(rho, phi, params: MediumParams):
    f = np.asarray(lg_ratio(rho, params.a))
    phi = np.asarray(phi, dtype=float)
    f, phi = np.broadcast_arrays(f, phi)
    vortex = np.exp(1j * params.l * phi)
    out = np.empty(f.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = f * vortex
    out[..., 0, 1] = 1.0
    out[..., 1, 0] = np.exp(-2j * params.S)
    out[..., 1, 1] = f * vortex.conj()
    return out


def total_rabi(rho, params: MediumParams):
    """Total control Rabi frequency in units of |Omega12|."""
    f = lg_ratio(rho, params.a)
    return np.sqrt(1.0 + np.square(f))


def velocity_matrix(rho, phi, params: MediumParams):
    omega = rabi_matrix(rho, phi, params)
    return omega @ np.swapaxes(omega.conj(), -1, -2)


@dataclass(frozen=True)
class VelocityDecomposition:
    v_plus: np.ndarray | float
    v_minus: np.ndarray | float
    u_plus: np.ndarray | float
    u_minus: np.ndarray | float
    theta_mix: np.ndarray | float
    v0_local: np.ndarray | float
    degenerate: np.ndarray | bool


def eigen_velocities(rho, params: MediumParams, *, strict=True) -> VelocityDecomposition:
    """Closed-form eigenvalues of the group-velocity matrix.

    With ``strict=False`` degenerate points get infinite inverse velocities
    and are reported through ``degenerate`` instead of raising.
    """
    f = np.asarray(lg_ratio(rho, params.a))
    v0_local = 1.0 + f * f
    split = 2.0 * f * math.cos(params.S)
    v_plus = v0_local + split
    v_minus = v0_local - split
    degenerate = np.minimum(v_plus, v_minus) < TOL_SINGULAR * v0_local
    if strict and np.any(degenerate):
        raise DegenerateVelocity(
            f"group velocity vanishes (a={params.a}, S={params.S}); "
            "control fields form a double-lambda system")
    u_plus = np.divide(1.0, v_plus, out=np.full(v_plus.shape, np.inf), where=v_plus > 0)
    u_minus = np.divide(1.0, v_minus, out=np.full(v_minus.shape, np.inf), where=v_minus > 0)

    def scalar(x):
        return x if x.ndim else x[()]

    return VelocityDecomposition(
        v_plus=scalar(v_plus),
        v_minus=scalar(v_minus),
        u_plus=scalar(u_plus),
        u_minus=scalar(u_minus),
        theta_mix=scalar(np.arctan(f)),
        v0_local=scalar(v0_local),
        degenerate=scalar(degenerate),
    )


def detuning_matrix(rho, phi, params: MediumParams):
    """Two-photon detuning matrix Omega * diag(delta) * Omega^-1."""
    omega = rabi_matrix(rho, phi, params)
    det = omega[..., 0, 0] * omega[..., 1, 1] - omega[..., 0, 1] * omega[..., 1, 0]
    scale = np.maximum(1.0, np.abs(omega[..., 0, 0]) ** 2)
    if np.any(np.abs(det) < TOL_SINGULAR * scale):
        raise SingularRabi("Rabi matrix is singular (f = 1 with S = 0 mod pi)")
    delta = np.diag(np.asarray(params.delta_tilde, dtype=complex))
    return omega @ delta @ np.linalg.inv(omega)


class Regime(enum.Enum):
    GENERIC = "generic"
    DOUBLE_LAMBDA = "double_lambda"
    INDEPENDENT_TRIPODS = "independent_tripods"
    VORTEX_CORE = "vortex_core"


def classify_regime(rho: float, params: MediumParams, phi: float = 0.0) -> Regime:
    """Identify the degenerate coupling limits at a single point.

    The vortex core is checked first, since there the two tripods decouple
    for any S.
    """
    f = lg_ratio(rho, params.a)
    if f < TOL_SINGULAR:
        return Regime.VORTEX_CORE
    om = rabi_matrix(rho, phi, params)
    scale = max(1.0, f * f)
    # Omega22/Omega21 == Omega12/Omega11, cross-multiplied
    if abs(om[1, 1] * om[0, 0] - om[0, 1] * om[1, 0]) < TOL_SINGULAR * scale:
        return Regime.DOUBLE_LAMBDA
    cross = om[0, 0] * om[1, 0].conjugate() + om[0, 1] * om[1, 1].conjugate()
    if abs(cross) < TOL_SINGULAR * scale:
        return Regime.INDEPENDENT_TRIPODS
    return Regime.GENERIC
