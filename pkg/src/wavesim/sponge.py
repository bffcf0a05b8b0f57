"""Absorbing boundary sponge.

Field values within ``width`` cells of an enabled face are multiplied
each phase by exp(-(strength * (width - d))**2), d being the distance to
the face in cells.  Weights from several faces multiply together; the
face under the free surface is left open by default so surface-related
motion is not damped.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

FACE_NAMES = ("x_min", "x_max", "y_min", "y_max", "z_min", "z_max")


@dataclass(frozen=True)
class SpongeProfile:
    """Sponge configuration: layer width in cells, damping strength, and
    one enable flag per box face.  ``z_min`` (the face above the free
    surface) defaults to open."""

    width: int = 20
    strength: float = 0.015
    x_min: bool = True
    x_max: bool = True
    y_min: bool = True
    y_max: bool = True
    z_min: bool = False
    z_max: bool = True

    def __post_init__(self):
        if self.width < 0:
            raise DomainError("sponge width must be non-negative")
        if self.strength < 0.0:
            raise DomainError("sponge strength must be non-negative")

    @property
    def faces(self) -> dict:
        return {name: getattr(self, name) for name in FACE_NAMES}

    @classmethod
    def disabled(cls) -> "SpongeProfile":
        return cls(width=0, x_min=False, x_max=False, y_min=False,
                   y_max=False, z_min=False, z_max=False)


def _face_weight(d: int, profile: SpongeProfile) -> float:
    if d >= profile.width:
        return 1.0
    return math.exp(-(profile.strength * (profile.width - d)) ** 2)


def _axis_weights(n: int, profile: SpongeProfile, lo_on: bool,
                  hi_on: bool) -> np.ndarray:
    w = np.ones(n)
    for i in range(n):
        if lo_on:
            w[i] *= _face_weight(i, profile)
        if hi_on:
            w[i] *= _face_weight(n - 1 - i, profile)
    return w


def sponge_weight(i: int, j: int, k: int, profile: SpongeProfile,
                  shape: tuple[int, int, int]) -> float:
    """Multiplicative damping weight at grid cell (i, j, k)."""
    nx, ny, nz = shape
    wx = 1.0
    if profile.x_min:
        wx *= _face_weight(i, profile)
    if profile.x_max:
        wx *= _face_weight(nx - 1 - i, profile)
    wy = 1.0
    if profile.y_min:
        wy *= _face_weight(j, profile)
    if profile.y_max:
        wy *= _face_weight(ny - 1 - j, profile)
    wz = 1.0
    if profile.z_min:
        wz *= _face_weight(k, profile)
    if profile.z_max:
        wz *= _face_weight(nz - 1 - k, profile)
    return (wx * wy) * wz


def build_sponge_weights(profile: SpongeProfile, shape: tuple[int, int, int],
                         dtype=np.float64) -> np.ndarray:
    """Full-grid weight array; equals :func:`sponge_weight` cell by cell."""
    nx, ny, nz = shape
    wx = _axis_weights(nx, profile, profile.x_min, profile.x_max)
    wy = _axis_weights(ny, profile, profile.y_min, profile.y_max)
    wz = _axis_weights(nz, profile, profile.z_min, profile.z_max)
    w = (wx[:, None, None] * wy[None, :, None]) * wz[None, None, :]
    return w.astype(dtype)
