"""Receivers, trace storage and the per-step recorder."""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fields import VELOCITY_COMPONENTS
from .geometry import STAGGER_OFFSETS, SimulationDomain
from .medium import sample_trilinear

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Receiver:
    """A recording point.

    ``grid_position`` is the fractional cell position on the simulation
    grid; the geographic fields are carried as metadata for trace
    headers and may be omitted for synthetic set-ups.
    """

    name: str
    grid_position: tuple
    latitude: float | None = None
    longitude: float | None = None
    depth: float | None = None

    def __post_init__(self):
        if not self.name:
            raise DomainError("receiver name must be non-empty")
        if len(self.grid_position) != 3:
            raise DomainError("grid_position must have three entries")


@dataclass
class TraceSet:
    """Velocity traces for a set of receivers.

    ``data`` has one row per (receiver, component) pair, receiver-major
    with components ordered vx, vy, vz, and one column per completed
    step.  Sample n holds the state after n+1 updates, i.e. time
    (n + 1) * dt past ``start_time``.
    """

    receivers: tuple
    data: np.ndarray
    dt: float
    start_time: object = None
    diverged: bool = False
    components: tuple = VELOCITY_COMPONENTS

    def __post_init__(self):
        self.receivers = tuple(self.receivers)
        expected = len(self.receivers) * len(self.components)
        if self.data.ndim != 2 or self.data.shape[0] != expected:
            raise DomainError(
                f"trace array must have {expected} rows, got {self.data.shape}")

    @property
    def n_samples(self) -> int:
        return self.data.shape[1]

    @property
    def station_names(self) -> tuple:
        return tuple(r.name for r in self.receivers)

    def time_axis(self) -> np.ndarray:
        return (np.arange(self.n_samples) + 1) * self.dt

    def row_index(self, station: str, component: str) -> int:
        names = self.station_names
        if station not in names:
            raise DomainError(f"unknown station {station!r}")
        if component not in self.components:
            raise DomainError(f"unknown component {component!r}")
        return (names.index(station) * len(self.components)
                + self.components.index(component))

    def trace(self, station: str, component: str) -> np.ndarray:
        return self.data[self.row_index(station, component)]

    def station_block(self, station: str) -> np.ndarray:
        """(3, n_samples) block of one station's components."""
        i = self.row_index(station, self.components[0])
        return self.data[i:i + len(self.components)]


class Recorder:
    """Samples the velocity fields at receiver positions every step.

    Sampling interpolates each component at the receiver position shifted
    by that component's staggered offset, and never writes to the fields.
    """

    def __init__(self, receivers, domain: SimulationDomain):
        self.receivers = tuple(receivers)
        self.domain = domain
        nx, ny, nz = domain.shape
        for r in self.receivers:
            gx, gy, gz = r.grid_position
            if not (0 < gx < nx - 1 and 0 < gy < ny - 1 and 0 < gz < nz - 1):
                raise DomainError(
                    f"receiver {r.name} grid position {r.grid_position} "
                    f"not strictly inside the grid {domain.shape}")
        self._positions = []
        for r in self.receivers:
            gx, gy, gz = r.grid_position
            for comp in VELOCITY_COMPONENTS:
                ox, oy, oz = STAGGER_OFFSETS[comp]
                self._positions.append((comp, gx - ox, gy - oy, gz - oz))
        self.data = np.zeros(
            (len(self._positions), domain.n_steps), dtype=np.float64)

    def record(self, fields, step: int):
        for row, (comp, cx, cy, cz) in enumerate(self._positions):
            self.data[row, step] = sample_trilinear(
                fields.component(comp), cx, cy, cz)

    def to_traceset(self, completed: int | None = None,
                    diverged: bool = False) -> TraceSet:
        if completed is None:
            completed = self.domain.n_steps
        return TraceSet(
            receivers=self.receivers,
            data=self.data[:, :completed].copy(),
            dt=self.domain.dt,
            start_time=self.domain.start_time,
            diverged=diverged,
        )
