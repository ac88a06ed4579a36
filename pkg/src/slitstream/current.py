"""Supercurrent, carrier velocity, quantum potential, and diagnostics.

Conventions: the current is the prefactor-free j = 2*Im(psi_conj grad psi),
so a plane wave sqrt(n0) e^(ikx) carries j = (2 k n0, 0); the velocity is
the phase gradient Im(psi_conj grad psi)/|psi|^2, so the same plane wave
moves at speed k. The quantum potential is Q = -(1/2) lap|psi| / |psi|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDensityError, DomainError
from .model import DEFAULT_EXCLUSION_RADIUS, SlitGeometry

#: Densities at or below this are treated as nodal (velocity/Q undefined).
DEFAULT_DENSITY_FLOOR = 1e-12

#: Force-balance floor, in units of k^3 (the natural force scale).
DEFAULT_FORCE_FLOOR_SCALE = 1e-3


def default_fd_step(k: float) -> float:
    """Central-difference step: 1e-3 of the inverse wavenumber."""
    return 1e-3 / k


def two_slit_current_xy(x: float, y: float, k: float, d: float,
                        exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS):
    """Closed-form two-slit current at a point; returns (jx, jy).

    Scalar reference implementation; the compiled kernel mirrors this
    arithmetic operation for operation.
    """
    if x == 0.0:
        raise DomainError("current undefined on the barrier line x = 0", reason="barrier")
    dy1 = y - 0.5 * d
    dy2 = y + 0.5 * d
    r1 = math.sqrt(x * x + dy1 * dy1)
    r2 = math.sqrt(x * x + dy2 * dy2)
    if k * r1 < exclusion_radius or k * r2 < exclusion_radius:
        raise DomainError(
            f"point ({x:g}, {y:g}) inside an exclusion disk: "
            f"k*r1 = {k * r1:g}, k*r2 = {k * r2:g} < {exclusion_radius:g}"
        )
    phi = k * (r2 - r1)
    c = math.cos(phi)
    s = math.sin(phi)
    sq = math.sqrt(r2 / r1)
    g1 = sq + c + s / (2.0 * k * r1)
    g2 = 1.0 / sq + c - s / (2.0 * k * r2)
    mx = g1 * (x / r1) + g2 * (x / r2)
    my = g1 * (dy1 / r1) + g2 * (dy2 / r2)
    pref = k / math.sqrt(r1 * r2)
    if x < 0.0:
        pref = -pref
    return pref * mx, pref * my


@dataclass(frozen=True)
class CurrentDecomposition:
    """Pieces of the closed-form two-slit current.

    g1/g2 weight the unit gradients of the two slit distances, phi21 is
    the slit phase difference k*(r2 - r1), and m_vec = g1*grad_r1 +
    g2*grad_r2 is the unnormalized current direction.
    """

    g1: float
    g2: float
    phi21: float
    grad_r1: np.ndarray
    grad_r2: np.ndarray
    m_vec: np.ndarray


@dataclass(frozen=True)
class CurrentSample:
    """Point sample of the two-slit field: wave value, density and current."""

    x: float
    y: float
    psi: complex
    j: np.ndarray
    n: float
    div_j: float | None = None


@dataclass(frozen=True)
class QuantumPotentialSample:
    x: float
    y: float
    Q: float
    grad_Q: np.ndarray | None = None


def current_two_slit(x: float, y: float, k: float, geom: SlitGeometry):
    """Closed-form two-slit current with its decomposition record."""
    if x == 0.0:
        raise DomainError("current undefined on the barrier line x = 0", reason="barrier")
    dy1 = y - 0.5 * geom.d
    dy2 = y + 0.5 * geom.d
    r1 = math.sqrt(x * x + dy1 * dy1)
    r2 = math.sqrt(x * x + dy2 * dy2)
    excl = geom.exclusion_radius
    if k * r1 < excl or k * r2 < excl:
        raise DomainError(
            f"point ({x:g}, {y:g}) inside an exclusion disk: "
            f"k*r1 = {k * r1:g}, k*r2 = {k * r2:g} < {excl:g}"
        )
    phi = k * (r2 - r1)
    c = math.cos(phi)
    s = math.sin(phi)
    sq = math.sqrt(r2 / r1)
    g1 = sq + c + s / (2.0 * k * r1)
    g2 = 1.0 / sq + c - s / (2.0 * k * r2)
    grad_r1 = np.array([x / r1, dy1 / r1])
    grad_r2 = np.array([x / r2, dy2 / r2])
    m_vec = np.array([g1 * (x / r1) + g2 * (x / r2),
                      g1 * (dy1 / r1) + g2 * (dy2 / r2)])
    pref = k / math.sqrt(r1 * r2)
    if x < 0.0:
        pref = -pref
    return pref * m_vec, CurrentDecomposition(g1, g2, phi, grad_r1, grad_r2, m_vec)


def current_generic(field, x: float, y: float, fd_step: float | None = None) -> np.ndarray:
    """Current 2*Im(psi_conj grad psi) from any wave field.

    With fd_step set, the gradient is always taken by central differences
    of that step (the definition-level oracle path); with fd_step None the
    field's exact gradient is used when it provides one.
    """
    if fd_step is None:
        grad = getattr(field, "gradient", None)
        if grad is not None:
            psi = field.value(x, y)
            gx, gy = grad(x, y)
            pc = psi.conjugate()
            return np.array([2.0 * (pc * gx).imag, 2.0 * (pc * gy).imag])
        fd_step = default_fd_step(field.k)
    h = fd_step
    psi = field.value(x, y)
    gx = (field.value(x + h, y) - field.value(x - h, y)) / (2.0 * h)
    gy = (field.value(x, y + h) - field.value(x, y - h)) / (2.0 * h)
    pc = psi.conjugate()
    return np.array([2.0 * (pc * gx).imag, 2.0 * (pc * gy).imag])


def velocity(field, x: float, y: float,
             density_floor: float = DEFAULT_DENSITY_FLOOR,
             fd_step: float | None = None) -> np.ndarray:
    """Carrier velocity: the phase gradient Im(psi_conj grad psi)/|psi|^2."""
    psi = field.value(x, y)
    n = psi.real * psi.real + psi.imag * psi.imag
    if n <= density_floor:
        raise DegenerateDensityError(
            f"density {n:g} at ({x:g}, {y:g}) at or below floor {density_floor:g}"
        )
    grad = getattr(field, "gradient", None)
    if grad is not None and fd_step is None:
        gx, gy = grad(x, y)
    else:
        h = fd_step if fd_step is not None else default_fd_step(field.k)
        gx = (field.value(x + h, y) - field.value(x - h, y)) / (2.0 * h)
        gy = (field.value(x, y + h) - field.value(x, y - h)) / (2.0 * h)
    pc = psi.conjugate()
    return np.array([(pc * gx).imag / n, (pc * gy).imag / n])


def _modulus_curvature_exact(field, x, y, density_floor):
    """lap|psi| / |psi| from the field's exact first and second derivatives."""
    psi = field.value(x, y)
    n = psi.real * psi.real + psi.imag * psi.imag
    if math.sqrt(n) <= density_floor:
        raise DegenerateDensityError(f"|psi| at ({x:g}, {y:g}) at or below floor")
    gx, gy = field.gradient(x, y)
    hxx, hxy, hyy = field.hessian(x, y)
    pc = psi.conjugate()
    nx = 2.0 * (pc * gx).real
    ny = 2.0 * (pc * gy).real
    lap_n = 2.0 * (abs(gx) ** 2 + abs(gy) ** 2 + (pc * (hxx + hyy)).real)
    # lap sqrt(n) / sqrt(n) = lap_n/(2n) - |grad n|^2/(4 n^2)
    return lap_n / (2.0 * n) - (nx * nx + ny * ny) / (4.0 * n * n)


def _modulus_curvature_fd(field, x, y, h, density_floor):
    """lap|psi| / |psi| by the 5-point second-difference stencil."""
    r0 = abs(field.value(x, y))
    rxp = abs(field.value(x + h, y))
    rxm = abs(field.value(x - h, y))
    ryp = abs(field.value(x, y + h))
    rym = abs(field.value(x, y - h))
    for r in (r0, rxp, rxm, ryp, rym):
        if r <= density_floor:
            raise DegenerateDensityError(f"|psi| near ({x:g}, {y:g}) at or below floor")
    return (rxp + rxm + ryp + rym - 4.0 * r0) / (h * h) / r0


def quantum_potential_value(field, x: float, y: float,
                            fd_step: float | None = None,
                            density_floor: float = DEFAULT_DENSITY_FLOOR) -> float:
    """Q = -(1/2) lap|psi| / |psi| as a bare float.

    Exact derivatives are used when the field carries a Hessian and no
    fd_step is forced; otherwise central second differences.
    """
    if fd_step is None and getattr(field, "hessian", None) is not None:
        curv = _modulus_curvature_exact(field, x, y, density_floor)
    else:
        h = fd_step if fd_step is not None else default_fd_step(field.k)
        curv = _modulus_curvature_fd(field, x, y, h, density_floor)
    return -0.5 * curv


def quantum_potential(field, x: float, y: float,
                      fd_step: float | None = None,
                      density_floor: float = DEFAULT_DENSITY_FLOOR,
                      with_gradient: bool = False) -> QuantumPotentialSample:
    """Quantum potential sample; grad_Q (optional) by differencing Q."""
    q = quantum_potential_value(field, x, y, fd_step, density_floor)
    grad = None
    if with_gradient:
        h = fd_step if fd_step is not None else default_fd_step(field.k)
        qxp = quantum_potential_value(field, x + h, y, fd_step, density_floor)
        qxm = quantum_potential_value(field, x - h, y, fd_step, density_floor)
        qyp = quantum_potential_value(field, x, y + h, fd_step, density_floor)
        qym = quantum_potential_value(field, x, y - h, fd_step, density_floor)
        grad = np.array([(qxp - qxm) / (2.0 * h), (qyp - qym) / (2.0 * h)])
    return QuantumPotentialSample(x, y, q, grad)


def divergence(field, x: float, y: float, fd_step: float | None = None) -> float:
    """Central-difference estimate of div j for the field's current."""
    h = fd_step if fd_step is not None else default_fd_step(field.k)
    jxp = current_generic(field, x + h, y)[0]
    jxm = current_generic(field, x - h, y)[0]
    jyp = current_generic(field, x, y + h)[1]
    jym = current_generic(field, x, y - h)[1]
    return (jxp - jxm) / (2.0 * h) + (jyp - jym) / (2.0 * h)


def quantum_force_residual(field, x: float, y: float,
                           fd_step: float | None = None,
                           force_floor: float | None = None,
                           density_floor: float = DEFAULT_DENSITY_FLOOR,
                           velocity_at: np.ndarray | None = None,
                           acceleration: np.ndarray | None = None) -> float:
    """Relative defect of the steady force balance (v.grad)v = -grad Q.

    Returns |a + grad Q| / max(|a|, |grad Q|, floor). The floor (default
    1e-3 * k^3, the natural force unit) keeps near-force-free regions from
    reporting spurious O(1) residuals; pass force_floor=0 for the strict
    ratio. The magnetic force is identically zero here (no external
    field), so this is the full balance. Velocity and acceleration are
    computed from the field unless supplied.
    """
    k = field.k
    h = fd_step if fd_step is not None else default_fd_step(k)
    if force_floor is None:
        force_floor = DEFAULT_FORCE_FLOOR_SCALE * k ** 3
    v = velocity(field, x, y, density_floor) if velocity_at is None else np.asarray(velocity_at)
    if acceleration is None:
        vxp = velocity(field, x + h, y, density_floor)
        vxm = velocity(field, x - h, y, density_floor)
        vyp = velocity(field, x, y + h, density_floor)
        vym = velocity(field, x, y - h, density_floor)
        dv_dx = (vxp - vxm) / (2.0 * h)
        dv_dy = (vyp - vym) / (2.0 * h)
        a = v[0] * dv_dx + v[1] * dv_dy
    else:
        a = np.asarray(acceleration)
    qxp = quantum_potential_value(field, x + h, y, None, density_floor)
    qxm = quantum_potential_value(field, x - h, y, None, density_floor)
    qyp = quantum_potential_value(field, x, y + h, None, density_floor)
    qym = quantum_potential_value(field, x, y - h, None, density_floor)
    gq = np.array([(qxp - qxm) / (2.0 * h), (qyp - qym) / (2.0 * h)])
    num = float(np.hypot(*(a + gq)))
    den = max(float(np.hypot(*a)), float(np.hypot(*gq)), force_floor)
    if den == 0.0:
        return 0.0
    return num / den


def sample_two_slit(x: float, y: float, k: float, geom: SlitGeometry,
                    with_divergence: bool = False,
                    fd_step: float | None = None) -> CurrentSample:
    """Full point sample (psi, n, j, optionally div j) of the two-slit field."""
    from .model import DoubleSlitWave, psi_double_slit

    psi = psi_double_slit(x, y, k, geom)
    j, _ = current_two_slit(x, y, k, geom)
    div = None
    if with_divergence:
        div = divergence(DoubleSlitWave(k, geom), x, y, fd_step)
    return CurrentSample(x, y, psi, j, psi.real * psi.real + psi.imag * psi.imag, div)


class DoubleSlitCurrent:
    """Closed-form two-slit current field, the main tracing target."""

    def __init__(self, k: float, geom: SlitGeometry):
        self.k = float(k)
        self.geom = geom

    def current(self, x, y):
        return two_slit_current_xy(x, y, self.k, self.geom.d, self.geom.exclusion_radius)


class SingleSlitCurrent:
    """Radial current 2k/r of the one-slit far field (sign by barrier side)."""

    def __init__(self, k: float, exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS,
                 center: tuple[float, float] = (0.0, 0.0)):
        self.k = float(k)
        self.exclusion_radius = float(exclusion_radius)
        self.center = (float(center[0]), float(center[1]))

    def current(self, x, y):
        dx = x - self.center[0]
        dy = y - self.center[1]
        if dx == 0.0:
            raise DomainError("current undefined on the barrier line", reason="barrier")
        r = math.sqrt(dx * dx + dy * dy)
        if self.k * r < self.exclusion_radius:
            raise DomainError(f"k*r = {self.k * r:g} inside the exclusion disk")
        s = 2.0 * self.k / (r * r)
        if dx < 0.0:
            s = -s
        return s * dx, s * dy


class WaveCurrent:
    """Current field derived from a wave field via the defining formula."""

    def __init__(self, wave, fd_step: float | None = None):
        self.wave = wave
        self.k = wave.k
        self.fd_step = fd_step

    def current(self, x, y):
        j = current_generic(self.wave, x, y, self.fd_step)
        return float(j[0]), float(j[1])


class CallableCurrent:
    """Adapter for a plain (x, y) -> (jx, jy) function."""

    def __init__(self, fn, k: float = 1.0):
        self._fn = fn
        self.k = float(k)

    def current(self, x, y):
        return self._fn(x, y)
