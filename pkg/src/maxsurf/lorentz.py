"""Vectors and the Gauss-map sphere geometry of E3 and L3."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import AmbientMismatch, EquatorError, NorthPole, OffHyperboloid

_LIGHT_BAND = 1e-12
_HYPERBOLOID_TOL = 1e-8


class Ambient(Enum):
    EUCLIDEAN = "euclidean"
    LORENTZIAN = "lorentzian"


class CausalCharacter(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


@dataclass(frozen=True)
class Vec3:
    """Point or tangent vector of E3 / L3, tagged with its ambient space."""

    x1: float
    x2: float
    x3: float
    ambient: Ambient = Ambient.LORENTZIAN

    def __post_init__(self):
        for c in (self.x1, self.x2, self.x3):
            if not np.isfinite(c):
                raise ValueError("non-finite component")

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    def __add__(self, other: "Vec3") -> "Vec3":
        _same_ambient(self, other)
        return Vec3(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3, self.ambient)

    def __sub__(self, other: "Vec3") -> "Vec3":
        _same_ambient(self, other)
        return Vec3(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3, self.ambient)

    def __mul__(self, s: float) -> "Vec3":
        return Vec3(s * self.x1, s * self.x2, s * self.x3, self.ambient)

    __rmul__ = __mul__

    def norm_sq(self) -> float:
        return inner(self, self)


def _same_ambient(u: Vec3, v: Vec3):
    if u.ambient is not v.ambient:
        raise AmbientMismatch(f"{u.ambient.value} vs {v.ambient.value}")


def inner(u: Vec3, v: Vec3) -> float:
    """<u,v>; the x3 term carries sign -1 in the Lorentzian case."""
    _same_ambient(u, v)
    s = -1.0 if u.ambient is Ambient.LORENTZIAN else 1.0
    return u.x1 * v.x1 + u.x2 * v.x2 + s * u.x3 * v.x3


def causal_character(v: Vec3) -> CausalCharacter:
    """Classify a Lorentzian vector, with a 1e-12 band around lightlike."""
    if v.ambient is not Ambient.LORENTZIAN:
        raise AmbientMismatch("causal character requires the Lorentzian ambient")
    q = inner(v, v)
    if abs(q) < _LIGHT_BAND:
        return CausalCharacter.LIGHTLIKE
    return CausalCharacter.SPACELIKE if q > 0 else CausalCharacter.TIMELIKE


def cross_lorentz(u: Vec3, v: Vec3) -> Vec3:
    """Lorentzian vector product, oriented so that <u x v, z> = -det(u, v, z).

    With this orientation e1 x e2 = +e3, and the Gauss map N of a conformal
    spacelike immersion satisfies N x X_u = -X_v and N x X_v = X_u, i.e. the
    product rotates tangent frames the same way the conjugate surface does.
    """
    if u.ambient is not Ambient.LORENTZIAN or v.ambient is not Ambient.LORENTZIAN:
        raise AmbientMismatch("cross_lorentz requires Lorentzian operands")
    return Vec3(
        u.x3 * v.x2 - u.x2 * v.x3,
        u.x1 * v.x3 - u.x3 * v.x1,
        u.x1 * v.x2 - u.x2 * v.x1,
        Ambient.LORENTZIAN,
    )


def stereo_inv(z: complex) -> Vec3:
    """Inverse stereographic projection onto the unit hyperboloid <x,x> = -1.

    mu^{-1}(z) = (-2 Re z, -2 Im z, |z|^2 + 1) / (|z|^2 - 1); |z| > 1 lands on
    the upper sheet x3 >= 1.  Undefined on the equator |z| = 1.
    """
    z = complex(z)
    d = abs(z) ** 2 - 1.0
    if abs(abs(z) - 1.0) < _LIGHT_BAND:
        raise EquatorError("|z| = 1 has no hyperboloid preimage")
    return Vec3(-2.0 * z.real / d, -2.0 * z.imag / d, (abs(z) ** 2 + 1.0) / d, Ambient.LORENTZIAN)


def stereo(p: Vec3) -> complex:
    """Stereographic projection from the north pole (0, 0, 1); inverse of stereo_inv."""
    if p.ambient is not Ambient.LORENTZIAN:
        raise AmbientMismatch("stereo requires a Lorentzian point")
    q = inner(p, p)
    if abs(q + 1.0) > _HYPERBOLOID_TOL:
        raise OffHyperboloid(f"<p,p> = {q:.3g} != -1")
    if abs(p.x3 - 1.0) < _LIGHT_BAND:
        raise NorthPole("projection center has no image")
    return complex(-p.x1 / (p.x3 - 1.0), -p.x2 / (p.x3 - 1.0))
