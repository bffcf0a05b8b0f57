"""Wavefield storage: three velocity and six stress components."""

from dataclasses import dataclass, fields as dataclass_fields

import numpy as np

from .errors import DomainError

VELOCITY_COMPONENTS = ("vx", "vy", "vz")
STRESS_COMPONENTS = ("sxx", "syy", "szz", "sxy", "sxz", "syz")
ALL_COMPONENTS = VELOCITY_COMPONENTS + STRESS_COMPONENTS


@dataclass
class FieldSet:
    """The nine field arrays of one simulation state.

    All arrays share the (nx, ny, nz) shape of the simulation grid; the
    staggered interpretation of each component is positional metadata
    (see ``geometry.STAGGER_OFFSETS``), not a storage difference.
    """

    vx: np.ndarray
    vy: np.ndarray
    vz: np.ndarray
    sxx: np.ndarray
    syy: np.ndarray
    szz: np.ndarray
    sxy: np.ndarray
    sxz: np.ndarray
    syz: np.ndarray

    def __post_init__(self):
        shapes = {getattr(self, c).shape for c in ALL_COMPONENTS}
        if len(shapes) != 1:
            raise DomainError("all field arrays must share one shape")

    @classmethod
    def zeros(cls, shape: tuple[int, int, int],
              dtype=np.float32) -> "FieldSet":
        return cls(**{c: np.zeros(shape, dtype=dtype) for c in ALL_COMPONENTS})

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.vx.shape

    @property
    def dtype(self):
        return self.vx.dtype

    def velocities(self) -> tuple[np.ndarray, ...]:
        return self.vx, self.vy, self.vz

    def stresses(self) -> tuple[np.ndarray, ...]:
        return tuple(getattr(self, c) for c in STRESS_COMPONENTS)

    def component(self, name: str) -> np.ndarray:
        if name not in ALL_COMPONENTS:
            raise DomainError(f"unknown field component {name!r}")
        return getattr(self, name)

    def copy(self) -> "FieldSet":
        return FieldSet(**{f.name: getattr(self, f.name).copy()
                           for f in dataclass_fields(self)})

    def all_finite(self) -> bool:
        return all(np.isfinite(getattr(self, c)).all() for c in ALL_COMPONENTS)
