"""Slit geometry, medium parameters, and the analytic slit wave fields.

Everything is dimensionless: hbar = m = 1, the overall amplitude is
normalized away, and lengths are naturally expressed through k*r. A
two-slit configuration is then fully specified by the product k*d plus
the exclusion radius around each slit inside which the far-field form
e^(+-ikr)/sqrt(r) is not trusted (it needs k*r >> 1).

Complex amplitudes are plain Python ``complex`` values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError

#: Default radius (in k*r units) of the exclusion disk around each slit.
DEFAULT_EXCLUSION_RADIUS = 1.0

_SQRT2 = math.sqrt(2.0)


def wavenumber_from_medium(kappa: float, beta: float, n0: float) -> float:
    """Wavenumber of the propagating plane-wave state of the medium.

    Solves k^2 = kappa^2 * (1 - beta*n0); requires beta*n0 < 1, otherwise
    no propagating wave exists and a DomainError is raised.
    """
    if kappa <= 0.0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    bn = beta * n0
    if bn < 0.0:
        raise DomainError(f"beta*n0 must be non-negative, got {bn}")
    if bn >= 1.0:
        raise DomainError(f"no propagating wave for beta*n0 = {bn} >= 1")
    return kappa * math.sqrt(1.0 - bn)


def nonlinear_fraction(kappa: float, k: float) -> float:
    """Relative weight (kappa^2 - k^2)/kappa^2 of the cubic medium term.

    Equals beta*n0 for a consistent medium and vanishes as k approaches
    its maximum kappa, which is the regime where the linearized theory
    applies.
    """
    if kappa <= 0.0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    if k <= 0.0 or k > kappa:
        raise DomainError(f"wavenumber must satisfy 0 < k <= kappa, got k={k}, kappa={kappa}")
    return (kappa * kappa - k * k) / (kappa * kappa)


@dataclass(frozen=True)
class MediumParams:
    """Bulk medium parameters together with the derived wavenumber."""

    kappa: float
    beta: float
    n0: float
    k: float

    def __post_init__(self):
        if self.kappa <= 0.0:
            raise DomainError(f"kappa must be positive, got {self.kappa}")
        if self.beta < 0.0 or self.n0 < 0.0:
            raise DomainError("beta and n0 must be non-negative")
        if not 0.0 < self.k <= self.kappa:
            raise DomainError(f"k must lie in (0, kappa], got k={self.k}, kappa={self.kappa}")

    @classmethod
    def from_medium(cls, kappa: float, beta: float, n0: float) -> "MediumParams":
        return cls(kappa, beta, n0, wavenumber_from_medium(kappa, beta, n0))

    @property
    def nonlinear_fraction(self) -> float:
        return nonlinear_fraction(self.kappa, self.k)


@dataclass(frozen=True)
class SlitGeometry:
    """Barrier along x = 0 with slits at y = +d/2 (slit 1) and y = -d/2 (slit 2)."""

    d: float
    exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS

    #: The barrier line; fixed at x = 0 by convention.
    barrier_x = 0.0

    def __post_init__(self):
        if self.d <= 0.0:
            raise DomainError(f"slit separation must be positive, got {self.d}")
        if self.exclusion_radius <= 0.0:
            raise DomainError(f"exclusion radius must be positive, got {self.exclusion_radius}")

    @property
    def slit1_y(self) -> float:
        return 0.5 * self.d

    @property
    def slit2_y(self) -> float:
        return -0.5 * self.d


def slit_radii(x: float, y: float, geom: SlitGeometry) -> tuple[float, float]:
    """Distances (r1, r2) from (x, y) to the two slits."""
    dy1 = y - 0.5 * geom.d
    dy2 = y + 0.5 * geom.d
    return math.sqrt(x * x + dy1 * dy1), math.sqrt(x * x + dy2 * dy2)


def psi_single_slit(
    r: float,
    k: float,
    x_sign: float,
    exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS,
) -> complex:
    """Far-field wave of a single slit at distance r from it.

    Outgoing e^(ikr)/sqrt(r) on the x > 0 side (`x_sign` positive),
    ingoing e^(-ikr)/sqrt(r) on the x < 0 side. |psi| = 1/sqrt(r) exactly.
    """
    if k <= 0.0:
        raise DomainError(f"wavenumber must be positive, got {k}")
    if x_sign == 0:
        raise DomainError("branch undefined on the barrier line", reason="barrier")
    if k * r < exclusion_radius:
        raise DomainError(
            f"k*r = {k * r:g} inside the exclusion disk (radius {exclusion_radius:g})"
        )
    s = 1.0 if x_sign > 0 else -1.0
    return cmath.exp(1j * s * k * r) / math.sqrt(r)


def psi_double_slit(x: float, y: float, k: float, geom: SlitGeometry) -> complex:
    """Equal-weight superposition of the two single-slit waves.

    The branch (outgoing/ingoing) is chosen by the side of the barrier;
    x = 0 exactly is rejected since the two half-planes are independent
    domains.
    """
    if k <= 0.0:
        raise DomainError(f"wavenumber must be positive, got {k}")
    if x == 0.0:
        raise DomainError("wave undefined on the barrier line x = 0", reason="barrier")
    r1, r2 = slit_radii(x, y, geom)
    excl = geom.exclusion_radius
    if k * r1 < excl or k * r2 < excl:
        raise DomainError(
            f"point ({x:g}, {y:g}) inside an exclusion disk: "
            f"k*r1 = {k * r1:g}, k*r2 = {k * r2:g} < {excl:g}"
        )
    s = 1.0 if x > 0.0 else -1.0
    u1 = cmath.exp(1j * s * k * r1) / math.sqrt(r1)
    u2 = cmath.exp(1j * s * k * r2) / math.sqrt(r2)
    return (u1 + u2) / _SQRT2


def _radial_wave_derivs(x, y, k, s, cx, cy):
    """Value, gradient and Hessian of e^(i s k r)/sqrt(r) about (cx, cy)."""
    dx = x - cx
    dy = y - cy
    r = math.sqrt(dx * dx + dy * dy)
    rx = dx / r
    ry = dy / r
    u = cmath.exp(1j * s * k * r) / math.sqrt(r)
    c1 = 1j * s * k - 0.5 / r
    ux = c1 * u * rx
    uy = c1 * u * ry
    c2 = c1 * c1 + 0.5 / (r * r)
    hxx = u * (c2 * rx * rx + c1 * (1.0 - rx * rx) / r)
    hxy = u * (c2 * rx * ry - c1 * rx * ry / r)
    hyy = u * (c2 * ry * ry + c1 * (1.0 - ry * ry) / r)
    return u, (ux, uy), (hxx, hxy, hyy)


class PlaneWave:
    """Uniform plane wave sqrt(n0) * e^(i (kx x + ky y)); test and oracle field."""

    def __init__(self, kx: float, ky: float = 0.0, n0: float = 1.0):
        self.kx = float(kx)
        self.ky = float(ky)
        self.n0 = float(n0)
        self.k = math.sqrt(kx * kx + ky * ky)

    def value(self, x, y):
        return math.sqrt(self.n0) * cmath.exp(1j * (self.kx * x + self.ky * y))

    def gradient(self, x, y):
        u = self.value(x, y)
        return 1j * self.kx * u, 1j * self.ky * u

    def hessian(self, x, y):
        u = self.value(x, y)
        return -self.kx * self.kx * u, -self.kx * self.ky * u, -self.ky * self.ky * u


class SingleSlitWave:
    """Far-field wave of a single slit at `center`, branch by side of the barrier."""

    def __init__(self, k: float, exclusion_radius: float = DEFAULT_EXCLUSION_RADIUS,
                 center: tuple[float, float] = (0.0, 0.0)):
        self.k = float(k)
        self.exclusion_radius = float(exclusion_radius)
        self.center = (float(center[0]), float(center[1]))

    def _branch(self, x):
        dx = x - self.center[0]
        if dx == 0.0:
            raise DomainError("wave undefined on the barrier line", reason="barrier")
        return 1.0 if dx > 0.0 else -1.0

    def check_point(self, x, y):
        s = self._branch(x)
        cx, cy = self.center
        r = math.sqrt((x - cx) ** 2 + (y - cy) ** 2)
        if self.k * r < self.exclusion_radius:
            raise DomainError(f"k*r = {self.k * r:g} inside the exclusion disk")
        return s, r

    def value(self, x, y):
        s, r = self.check_point(x, y)
        return psi_single_slit(r, self.k, s, self.exclusion_radius)

    def gradient(self, x, y):
        s, _ = self.check_point(x, y)
        _, grad, _ = _radial_wave_derivs(x, y, self.k, s, *self.center)
        return grad

    def hessian(self, x, y):
        s, _ = self.check_point(x, y)
        _, _, hess = _radial_wave_derivs(x, y, self.k, s, *self.center)
        return hess


class DoubleSlitWave:
    """Two-slit superposed far-field wave with exact derivatives."""

    def __init__(self, k: float, geom: SlitGeometry):
        self.k = float(k)
        self.geom = geom

    def check_point(self, x, y):
        if x == 0.0:
            raise DomainError("wave undefined on the barrier line x = 0", reason="barrier")
        r1, r2 = slit_radii(x, y, self.geom)
        excl = self.geom.exclusion_radius
        if self.k * r1 < excl or self.k * r2 < excl:
            raise DomainError(
                f"point ({x:g}, {y:g}) inside an exclusion disk: "
                f"k*r1 = {self.k * r1:g}, k*r2 = {self.k * r2:g} < {excl:g}"
            )
        return 1.0 if x > 0.0 else -1.0

    def value(self, x, y):
        return psi_double_slit(x, y, self.k, self.geom)

    def gradient(self, x, y):
        s = self.check_point(x, y)
        _, g1, _ = _radial_wave_derivs(x, y, self.k, s, 0.0, self.geom.slit1_y)
        _, g2, _ = _radial_wave_derivs(x, y, self.k, s, 0.0, self.geom.slit2_y)
        return (g1[0] + g2[0]) / _SQRT2, (g1[1] + g2[1]) / _SQRT2

    def hessian(self, x, y):
        s = self.check_point(x, y)
        _, _, h1 = _radial_wave_derivs(x, y, self.k, s, 0.0, self.geom.slit1_y)
        _, _, h2 = _radial_wave_derivs(x, y, self.k, s, 0.0, self.geom.slit2_y)
        return tuple((a + b) / _SQRT2 for a, b in zip(h1, h2))


class CallableWave:
    """Adapter turning a plain complex-valued function into a wave field."""

    def __init__(self, fn, k: float = 1.0, gradient=None, hessian=None):
        self._fn = fn
        self.k = float(k)
        if gradient is not None:
            self.gradient = gradient
        if hessian is not None:
            self.hessian = hessian

    def value(self, x, y):
        return self._fn(x, y)
