"""Derived quantities: the swap detuning, radial scans, OAM content and validity limits."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DegenerateVelocity, DomainError, NoSolution
from .medium import RHO_STAR, TOL_SINGULAR, MediumParams, eigen_velocities
from .transfer import adiabaticity, transmissions

DEFAULT_RHO_MAX = 3.0
DEFAULT_RHO_COUNT = 601
DEFAULT_M_MAX = 8
DEFAULT_N_PHI = 256

ADIABATICITY_PASS = 0.1
ADIABATICITY_WARN = 0.5
OPTICAL_DENSITY_BOUND = 2.0 * math.pi**2
OPTICAL_DENSITY_PASS = 40.0
DEGENERACY_WARN = 0.1
DIFFRACTION_PASS = 0.5
DIFFRACTION_WARN = 1.0

NON_RESONANT_CAVEAT = (
    "transitions to other excited hyperfine levels are not modelled; "
    "they shift the EIT resonance and increase losses")

_SEVERITY = {"pass": 0, "n/a": 0, "warn": 1, "fail": 2}


def default_rho_grid():
    return np.linspace(0.0, DEFAULT_RHO_MAX, DEFAULT_RHO_COUNT)


def solve_xi_condition(a: float, S: float) -> float:
    """Detuning xi* giving a pi phase difference between the eigen-polaritons at rho*."""
    params = MediumParams(a=a, S=S)
    try:
        vel = eigen_velocities(RHO_STAR, params)
    except DegenerateVelocity as exc:
        raise NoSolution(str(exc)) from exc
    gap = abs(vel.u_minus - vel.u_plus)
    if gap < TOL_SINGULAR:
        raise NoSolution(f"eigen-velocities coincide at rho* (a={a}, S={S})")
    return float(math.pi / gap)


@dataclass(frozen=True)
class ScanRecord:
    rho: float
    i1: float
    i2: float
    phase2: float
    flags: int = 0


def radial_scan(params: MediumParams, rho_grid=None) -> list[ScanRecord]:
    """Transmitted intensities along phi = 0.

    Degenerate points are not fatal; they come back with NaN intensities
    and the degeneracy bit set in ``flags``.
    """
    rho = default_rho_grid() if rho_grid is None else np.asarray(rho_grid, dtype=float)
    if rho.ndim != 1 or rho.size == 0:
        raise DomainError("rho grid must be a non-empty 1-d sequence")
    if rho[0] < 0 or np.any(np.diff(rho) <= 0):
        raise DomainError("rho grid must be non-negative and strictly increasing")
    res = transmissions(rho, 0.0, params, strict=False)
    i1, i2 = res.i1, res.i2
    phase2 = np.angle(res.t2)
    return [ScanRecord(float(r), float(a), float(b), float(p), int(f))
            for r, a, b, p, f in zip(rho, i1, i2, phase2, res.flags)]


@dataclass(frozen=True)
class OamSpectrum:
    windings: np.ndarray
    power: np.ndarray

    def at(self, m: int) -> float:
        idx = np.flatnonzero(self.windings == m)
        return float(self.power[idx[0]]) if idx.size else 0.0

    def dominant(self) -> int:
        return int(self.windings[np.argmax(self.power)])


def oam_spectrum(samples, m_max: int = DEFAULT_M_MAX) -> OamSpectrum:
    """Power per azimuthal winding number of a field sampled at phi_k = 2 pi k / n."""
    samples = np.asarray(samples, dtype=complex)
    n = samples.size
    if samples.ndim != 1 or n & (n - 1) or n < 4 * m_max:
        raise DomainError("need a power-of-two number of samples, at least 4*m_max")
    coeffs = np.fft.fft(samples) / n
    windings = np.arange(-m_max, m_max + 1)
    power = np.abs(coeffs[windings % n]) ** 2
    total = power.sum()
    if total == 0:
        raise DomainError("field vanishes identically; spectrum undefined")
    return OamSpectrum(windings, power / total)


def degeneracy_margin(params: MediumParams) -> float:
    """Minimum over rho >= 0 of v-/v0(0) = 1 + f^2 - 2f|cos S|.

    The quadratic in f is minimized at f = |cos S| when that value is
    reachable, otherwise at the peak ratio f(rho*).
    """
    c = abs(math.cos(params.S))
    f_max = params.a * math.exp(-0.5) * RHO_STAR
    if f_max >= c:
        return max(0.0, 1.0 - c * c)
    return 1.0 + f_max * f_max - 2.0 * f_max * c


def diffraction_number(length, wavelength, sigma) -> float:
    """L lambda / sigma^2; any consistent length unit."""
    return length * wavelength / sigma**2


@dataclass(frozen=True)
class ConstraintReport:
    adiabaticity: float
    alpha: float
    optical_density_ok: bool
    degeneracy_margin: float
    diffraction_number: float | None
    lifetime_ratio: float
    lifetime_ratio_true: float
    statuses: dict = field(default_factory=dict)
    caveats: tuple = ()

    @property
    def overall(self) -> str:
        return max(self.statuses.values(), key=_SEVERITY.__getitem__, default="pass")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["caveats"] = list(self.caveats)
        out["overall"] = self.overall
        for key in ("alpha", "lifetime_ratio", "lifetime_ratio_true"):
            if not math.isfinite(out[key]):
                out[key] = None
        return out


def _grade_upper(value, pass_below, warn_below):
    if value < pass_below:
        return "pass"
    return "warn" if value < warn_below else "fail"


def lifetime_report(params: MediumParams, physical=None) -> ConstraintReport:
    """Evaluate the validity conditions of the adiabatic treatment.

    ``physical`` is an optional ``(L, wavelength, sigma)`` triple in one
    length unit; without it the diffraction check reports ``n/a``.
    """
    adiab = adiabaticity(params)
    margin = degeneracy_margin(params)
    diffr = None if physical is None else diffraction_number(*physical)
    # tau_pol / tau with v_min ~ v0(0), and with the true minimum velocity
    ratio = adiab
    ratio_true = adiab / margin if margin > 0 else (0.0 if adiab == 0 else math.inf)

    statuses = {
        "adiabaticity": _grade_upper(adiab, ADIABATICITY_PASS, ADIABATICITY_WARN),
        "optical_density": ("pass" if params.alpha >= OPTICAL_DENSITY_PASS
                            else "warn" if params.alpha >= OPTICAL_DENSITY_BOUND
                            else "fail"),
        "degeneracy": ("fail" if margin < TOL_SINGULAR
                       else "warn" if margin < DEGENERACY_WARN else "pass"),
        "diffraction": ("n/a" if diffr is None
                        else _grade_upper(diffr, DIFFRACTION_PASS, DIFFRACTION_WARN)),
    }
    return ConstraintReport(
        adiabaticity=adiab,
        alpha=params.alpha,
        optical_density_ok=params.alpha >= OPTICAL_DENSITY_PASS,
        degeneracy_margin=margin,
        diffraction_number=diffr,
        lifetime_ratio=ratio,
        lifetime_ratio_true=ratio_true,
        statuses=statuses,
        caveats=(NON_RESONANT_CAVEAT,),
    )


PEAK_TIE_RTOL = 1e-5


def _vertex(x, y):
    """Vertex of the parabola through three points (Newton divided differences)."""
    d01 = (y[1] - y[0]) / (x[1] - x[0])
    d12 = (y[2] - y[1]) / (x[2] - x[1])
    curv = (d12 - d01) / (x[2] - x[0])
    if curv >= 0:
        return x[1], y[1]
    x_peak = -(d01 - curv * (x[0] + x[1])) / (2.0 * curv)
    return x_peak, y[0] + d01 * (x_peak - x[0]) + curv * (x_peak - x[0]) * (x_peak - x[1])


def find_peak(scan) -> tuple[float, float]:
    """Maximum of i2 along a scan, refined by a parabola through the top three samples.

    The transmissions depend on rho only through the amplitude ratio f(rho),
    which takes each value twice, so a maximum below f(rho*) shows up as a
    pair of equal peaks.  Peaks within ``PEAK_TIE_RTOL`` of the best one are
    treated as ties and the innermost is returned.
    """
    if len(scan) == 0:
        raise DomainError("empty scan")
    rho = np.array([r.rho for r in scan])
    i2 = np.array([r.i2 for r in scan])
    if np.all(np.isnan(i2)):
        raise DomainError("scan has no finite intensities")
    y = np.where(np.isnan(i2), -np.inf, i2)
    n = len(y)
    candidates = []
    for k in range(n):
        left = y[k - 1] if k > 0 else -np.inf
        right = y[k + 1] if k < n - 1 else -np.inf
        if not (y[k] >= left and y[k] >= right) or not np.isfinite(y[k]):
            continue
        if 0 < k < n - 1 and np.all(np.isfinite(y[k - 1:k + 2])):
            candidates.append(_vertex(rho[k - 1:k + 2], y[k - 1:k + 2]))
        else:
            candidates.append((rho[k], y[k]))
    best = max(h for _, h in candidates)
    for x, h in candidates:
        if h >= best - PEAK_TIE_RTOL * abs(best):
            return float(x), float(h)
    raise AssertionError("unreachable")


def azimuthal_map(params: MediumParams, rho_grid, n_phi: int):
    """|t2|^2 and arg t2 on a (rho, phi) grid with phi uniform on [0, 2 pi)."""
    rho = np.asarray(rho_grid, dtype=float)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    res = transmissions(rho[:, None], phi[None, :], params, strict=False)
    return rho, phi, res.i2, np.angle(res.t2)


def winding_number(phase) -> float:
    """Net phase advance over one closed azimuth loop, in units of 2 pi."""
    phase = np.asarray(phase, dtype=float)
    closed = np.unwrap(np.append(phase, phase[0]))
    return (closed[-1] - closed[0]) / (2.0 * np.pi)
