"""Geographic bounds, local Cartesian coordinates and grid geometry.

The simulated region is described by a geographic bounding box
(latitude/longitude in degrees, depth in kilometres, positive down) and
mapped to a local Cartesian frame with an equirectangular projection on a
spherical Earth: the x axis runs along latitude (south to north), the y
axis along longitude (west to east, scaled by the cosine of the mean
latitude of the box), and the z axis points down.  Local coordinates are
metres with the origin at (lat_min, lon_min, depth_min).
"""

import math
from dataclasses import dataclass
from datetime import datetime

from .errors import DomainError

EARTH_RADIUS_M = 6_371_000.0

# Courant safety factor of the 4th-order staggered update and the minimum
# number of grid points required per shortest propagated wavelength.
CFL_FACTOR = 0.495
POINTS_PER_WAVELENGTH = 5.0

#: Offsets (in grid units) of each field component within a grid cell.
STAGGER_OFFSETS = {
    "vx": (0.5, 0.0, 0.0),
    "vy": (0.0, 0.5, 0.0),
    "vz": (0.0, 0.0, 0.5),
    "sxx": (0.0, 0.0, 0.0),
    "syy": (0.0, 0.0, 0.0),
    "szz": (0.0, 0.0, 0.0),
    "sxy": (0.5, 0.5, 0.0),
    "sxz": (0.5, 0.0, 0.5),
    "syz": (0.0, 0.5, 0.5),
}


@dataclass(frozen=True)
class GeographicBounds:
    """Geographic bounding box of the simulated region.

    Attributes
    ----------
    lat_min, lat_max : float
        Latitude range in degrees, lat_min < lat_max.
    lon_min, lon_max : float
        Longitude range in degrees, lon_min < lon_max.
    depth_min, depth_max : float
        Depth range in kilometres, positive down.  A negative depth_min
        places part of the box above sea level.
    """

    lat_min: float
    lat_max: float
    lon_min: float
    lon_max: float
    depth_min: float
    depth_max: float

    def __post_init__(self):
        if not -90.0 <= self.lat_min < self.lat_max <= 90.0:
            raise DomainError(
                f"invalid latitude range [{self.lat_min}, {self.lat_max}]")
        if not -180.0 <= self.lon_min < self.lon_max <= 180.0:
            raise DomainError(
                f"invalid longitude range [{self.lon_min}, {self.lon_max}]")
        if not self.depth_min < self.depth_max:
            raise DomainError(
                f"invalid depth range [{self.depth_min}, {self.depth_max}]")

    @property
    def mean_latitude(self) -> float:
        return 0.5 * (self.lat_min + self.lat_max)


def meters_per_degree_latitude() -> float:
    return EARTH_RADIUS_M * math.pi / 180.0


def meters_per_degree_longitude(latitude: float) -> float:
    return EARTH_RADIUS_M * math.cos(math.radians(latitude)) * math.pi / 180.0


def geographic_to_local(bounds: GeographicBounds, lat: float, lon: float,
                        depth: float) -> tuple[float, float, float]:
    """Map a geographic point to local Cartesian coordinates in metres.

    Parameters
    ----------
    bounds : GeographicBounds
        Box defining the local frame.
    lat, lon : float
        Point coordinates in degrees.  Must lie inside the box.
    depth : float
        Depth in kilometres, positive down.  Must lie inside the box.

    Returns
    -------
    (x, y, z) : tuple of float
        Local coordinates in metres; x along latitude, y along longitude,
        z down, origin at (lat_min, lon_min, depth_min).

    Raises
    ------
    DomainError
        If any coordinate lies outside the bounds; the message names the
        offending axis.
    """
    if not bounds.lat_min <= lat <= bounds.lat_max:
        raise DomainError(f"latitude {lat} outside "
                          f"[{bounds.lat_min}, {bounds.lat_max}]")
    if not bounds.lon_min <= lon <= bounds.lon_max:
        raise DomainError(f"longitude {lon} outside "
                          f"[{bounds.lon_min}, {bounds.lon_max}]")
    if not bounds.depth_min <= depth <= bounds.depth_max:
        raise DomainError(f"depth {depth} outside "
                          f"[{bounds.depth_min}, {bounds.depth_max}]")
    x = (lat - bounds.lat_min) * meters_per_degree_latitude()
    y = (lon - bounds.lon_min) * meters_per_degree_longitude(bounds.mean_latitude)
    z = (depth - bounds.depth_min) * 1000.0
    return x, y, z


def local_to_geographic(bounds: GeographicBounds, x: float, y: float,
                        z: float) -> tuple[float, float, float]:
    """Inverse of :func:`geographic_to_local` (lat, lon in degrees; depth km)."""
    lat = bounds.lat_min + x / meters_per_degree_latitude()
    lon = bounds.lon_min + y / meters_per_degree_longitude(bounds.mean_latitude)
    depth = bounds.depth_min + z / 1000.0
    return lat, lon, depth


def approximate_distance_km(lat1: float, lon1: float, lat2: float,
                            lon2: float) -> float:
    """Horizontal distance in km under the same flat projection."""
    mean_lat = 0.5 * (lat1 + lat2)
    dx = (lat2 - lat1) * meters_per_degree_latitude()
    dy = (lon2 - lon1) * meters_per_degree_longitude(mean_lat)
    return math.hypot(dx, dy) / 1000.0


def max_time_step(min_step: float, vel_max: float) -> float:
    """Largest stable time step for a grid spacing and a peak velocity.

    Parameters
    ----------
    min_step : float
        Smallest spatial step of the grid in metres.
    vel_max : float
        Largest wave speed present in the medium in m/s.
    """
    if min_step <= 0.0 or vel_max <= 0.0:
        raise DomainError("min_step and vel_max must be positive")
    return CFL_FACTOR * min_step / vel_max


def max_source_frequency(max_step: float, vel_min: float) -> float:
    """Highest source frequency resolvable on a grid without dispersion.

    Parameters
    ----------
    max_step : float
        Largest spatial step of the grid in metres.
    vel_min : float
        Smallest wave speed present in the medium in m/s.
    """
    if max_step <= 0.0 or vel_min <= 0.0:
        raise DomainError("max_step and vel_min must be positive")
    return vel_min / (POINTS_PER_WAVELENGTH * max_step)


def staggered_position(component: str, i: int, j: int,
                       k: int) -> tuple[float, float, float]:
    """Grid-unit position of a field component stored at cell (i, j, k)."""
    try:
        ox, oy, oz = STAGGER_OFFSETS[component]
    except KeyError:
        raise DomainError(f"unknown field component {component!r}") from None
    return i + ox, j + oy, k + oz


@dataclass(frozen=True)
class SimulationDomain:
    """Discretised simulation box.

    The physical size is derived from the bounds with the equirectangular
    projection; grid spacings follow as size/n per axis.  Time stepping is
    described by the step length ``dt`` (seconds), the step count
    ``n_steps`` and the absolute ``start_time`` of the first sample.
    """

    bounds: GeographicBounds
    nx: int
    ny: int
    nz: int
    size_x: float
    size_y: float
    size_z: float
    dt: float
    n_steps: int
    start_time: datetime

    def __post_init__(self):
        for name in ("nx", "ny", "nz"):
            if getattr(self, name) < 4:
                raise DomainError(f"{name} must be at least 4")
        if self.dt <= 0.0:
            raise DomainError("dt must be positive")
        if self.n_steps < 0:
            raise DomainError("n_steps must not be negative")

    @classmethod
    def from_bounds(cls, bounds: GeographicBounds, nx: int, ny: int, nz: int,
                    dt: float, n_steps: int,
                    start_time: datetime) -> "SimulationDomain":
        size_x, size_y, size_z = geographic_to_local(
            bounds, bounds.lat_max, bounds.lon_max, bounds.depth_max)
        return cls(bounds, nx, ny, nz, size_x, size_y, size_z, dt, n_steps,
                   start_time)

    @property
    def dx(self) -> float:
        return self.size_x / self.nx

    @property
    def dy(self) -> float:
        return self.size_y / self.ny

    @property
    def dz(self) -> float:
        return self.size_z / self.nz

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.nx, self.ny, self.nz

    @property
    def cell_count(self) -> int:
        return self.nx * self.ny * self.nz

    @property
    def min_step(self) -> float:
        return min(self.dx, self.dy, self.dz)

    @property
    def max_step(self) -> float:
        return max(self.dx, self.dy, self.dz)

    @property
    def duration(self) -> float:
        """Simulated time span in seconds (n_steps * dt)."""
        return self.n_steps * self.dt

    @property
    def surface_z(self) -> float:
        """Local z of zero depth in metres; positive when the box tops above
        sea level, in which case cells above it hold vacuum."""
        return -self.bounds.depth_min * 1000.0

    def grid_position(self, lat: float, lon: float,
                      depth: float) -> tuple[float, float, float]:
        """Geographic point to fractional grid coordinates (units of cells)."""
        x, y, z = geographic_to_local(self.bounds, lat, lon, depth)
        return x / self.dx, y / self.dy, z / self.dz


@dataclass(frozen=True)
class LevelOfDetail:
    """A named grid/time resolution preset.

    ``tabulated_max_frequency`` is the frequency limit recorded alongside
    the preset for reference; run configuration always recomputes the
    limit from the actual medium and grid via
    :func:`max_source_frequency`.
    """

    level: int
    nx: int
    ny: int
    nz: int
    n_steps: int
    dt: float
    tabulated_max_frequency: float


#: Resolution ladder, ordered by cell count.
LEVELS = (
    LevelOfDetail(0, 64, 64, 32, 1700, 0.10, 0.037),
    LevelOfDetail(1, 64, 64, 64, 1700, 0.10, 0.037),
    LevelOfDetail(2, 128, 64, 64, 1700, 0.10, 0.037),
    LevelOfDetail(3, 128, 128, 64, 1700, 0.10, 0.075),
    LevelOfDetail(4, 128, 128, 128, 3400, 0.05, 0.075),
    LevelOfDetail(5, 256, 128, 128, 3400, 0.05, 0.075),
    LevelOfDetail(6, 256, 256, 128, 3400, 0.05, 0.15),
    LevelOfDetail(7, 256, 256, 256, 17000, 0.01, 0.15),
    LevelOfDetail(8, 512, 256, 256, 17000, 0.01, 0.15),
    LevelOfDetail(9, 512, 512, 256, 17000, 0.01, 0.30),
    LevelOfDetail(10, 512, 512, 512, 17000, 0.01, 0.30),
)


def level_preset(level: int) -> LevelOfDetail:
    if not 0 <= level < len(LEVELS):
        raise DomainError(f"level must be in [0, {len(LEVELS) - 1}]")
    return LEVELS[level]
