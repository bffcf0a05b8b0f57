"""Layered medium models and the gridded parameter volume.

A :class:`LayeredModel` is a stack of constant-property layers given in
field units (depths km, velocities km/s, densities g/cm3); everything is
converted to SI when the model is ingested into a
:class:`ParameterVolume`, a regular grid of density and Lame parameters
covering the same physical box as the simulation grid, usually at a
coarser resolution.  Cells above the free surface hold vacuum values and
a density below :data:`VACUUM_DENSITY_THRESHOLD` marks a point as
vacuum.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ModelError
from .geometry import SimulationDomain

#: Density assigned above the free surface, kg/m3.
VACUUM_DENSITY = 1.0
#: Densities strictly below this are treated as vacuum, kg/m3.
VACUUM_DENSITY_THRESHOLD = 10.0

#: Default ratio of simulation-grid to parameter-grid resolution per axis.
PARAMETER_GRID_DIVISOR = 4
#: Smallest parameter grid extent per axis.
PARAMETER_GRID_MIN = 2


def lame_from_velocities(vp: float, vs: float, rho: float) -> tuple[float, float]:
    """Lame parameters (lambda, mu) in Pa from SI velocities and density.

    Parameters
    ----------
    vp, vs : float
        P and S wave speeds in m/s.
    rho : float
        Density in kg/m3.

    Raises
    ------
    ModelError
        If the velocities would produce a negative lambda
        (requires vp**2 >= 2 * vs**2).
    """
    if vp <= 0.0 or vs < 0.0 or rho <= 0.0:
        raise ModelError(f"non-physical medium values vp={vp} vs={vs} rho={rho}")
    mu = rho * vs * vs
    lam = rho * vp * vp - 2.0 * mu
    if lam < 0.0:
        raise ModelError(
            f"vp={vp} vs={vs} give negative lambda; vp^2 must be >= 2*vs^2")
    return lam, mu


@dataclass(frozen=True)
class Layer:
    """One constant-property layer.

    Attributes
    ----------
    top_depth : float
        Depth of the layer top in km, positive down.
    vp, vs : float
        Wave speeds in km/s.
    rho : float
        Density in g/cm3.
    """

    top_depth: float
    vp: float
    vs: float
    rho: float


class LayeredModel:
    """Ordered stack of layers, extending downward from the first top."""

    def __init__(self, layers):
        layers = tuple(layers)
        if not layers:
            raise ModelError("a layered model needs at least one layer")
        tops = [la.top_depth for la in layers]
        if any(b <= a for a, b in zip(tops, tops[1:])):
            raise ModelError("layer tops must strictly increase with depth")
        for la in layers:
            if la.vp <= 0.0 or la.vs < 0.0 or la.rho <= 0.0:
                raise ModelError(f"non-physical layer {la}")
            # fail early if the pair cannot produce a valid lambda
            lame_from_velocities(la.vp * 1000.0, la.vs * 1000.0, la.rho * 1000.0)
        self.layers = layers

    @classmethod
    def from_rows(cls, rows) -> "LayeredModel":
        """Build from (top_depth_km, vp_km_s, vs_km_s, rho_g_cm3) rows."""
        return cls(Layer(*row) for row in rows)

    def layer_at(self, depth: float) -> Layer:
        """Deepest layer whose top lies at or above ``depth`` (km)."""
        if depth < self.layers[0].top_depth:
            raise ModelError(
                f"depth {depth} km above the first layer top "
                f"{self.layers[0].top_depth} km")
        chosen = self.layers[0]
        for la in self.layers:
            if la.top_depth <= depth:
                chosen = la
            else:
                break
        return chosen

    @property
    def vel_max(self) -> float:
        """Largest wave speed in the stack, m/s."""
        return max(la.vp for la in self.layers) * 1000.0

    @property
    def vel_min(self) -> float:
        """Smallest non-zero wave speed in the stack, m/s."""
        speeds = [la.vs for la in self.layers if la.vs > 0.0]
        speeds += [la.vp for la in self.layers]
        return min(speeds) * 1000.0


def mirrored_index(i: int, n: int) -> int:
    """Fold an out-of-range index back into [0, n) by mirror repetition.

    The mapping is periodic with period 2n; reads just past either end
    reflect back inside (-1 -> 0, n -> n-1).
    """
    if n < 1:
        raise DomainError("n must be positive")
    i %= 2 * n
    if i >= n:
        i = 2 * n - 1 - i
    return i


def mirrored_indices(idx: np.ndarray, n: int) -> np.ndarray:
    """Vectorised :func:`mirrored_index` over an integer array."""
    if n < 1:
        raise DomainError("n must be positive")
    m = np.mod(idx, 2 * n)
    return np.where(m >= n, 2 * n - 1 - m, m)


def _lerp(a, b, t):
    # exact at t == 0 and t == 1
    return a * (1.0 - t) + b * t


def sample_trilinear(field: np.ndarray, x: float, y: float, z: float) -> float:
    """Trilinear interpolation of ``field`` at a fractional index position.

    Out-of-range positions resolve through :func:`mirrored_index` on the
    eight corner lookups.  Exact at integer positions.
    """
    nx, ny, nz = field.shape
    ix, iy, iz = math.floor(x), math.floor(y), math.floor(z)
    tx, ty, tz = x - ix, y - iy, z - iz
    x0, x1 = mirrored_index(ix, nx), mirrored_index(ix + 1, nx)
    y0, y1 = mirrored_index(iy, ny), mirrored_index(iy + 1, ny)
    z0, z1 = mirrored_index(iz, nz), mirrored_index(iz + 1, nz)
    c00 = _lerp(field[x0, y0, z0], field[x1, y0, z0], tx)
    c10 = _lerp(field[x0, y1, z0], field[x1, y1, z0], tx)
    c01 = _lerp(field[x0, y0, z1], field[x1, y0, z1], tx)
    c11 = _lerp(field[x0, y1, z1], field[x1, y1, z1], tx)
    c0 = _lerp(c00, c10, ty)
    c1 = _lerp(c01, c11, ty)
    return float(_lerp(c0, c1, tz))


def sample_trilinear_lattice(field: np.ndarray, xs: np.ndarray, ys: np.ndarray,
                             zs: np.ndarray) -> np.ndarray:
    """Trilinear interpolation on the tensor-product lattice xs x ys x zs.

    Separable form of :func:`sample_trilinear`: one linear interpolation
    per axis with mirrored corner indices, identical results to the
    point-wise sampler.
    """
    out = field
    for axis, coords in enumerate((xs, ys, zs)):
        coords = np.asarray(coords, dtype=np.float64)
        n = field.shape[axis]
        i0 = np.floor(coords).astype(np.int64)
        t = coords - i0
        a = mirrored_indices(i0, n)
        b = mirrored_indices(i0 + 1, n)
        lo = np.take(out, a, axis=axis)
        hi = np.take(out, b, axis=axis)
        shape = [1, 1, 1]
        shape[axis] = len(coords)
        t = t.reshape(shape)
        out = _lerp(lo, hi, t)
    return out


@dataclass(frozen=True)
class ParameterVolume:
    """Gridded medium parameters in SI units.

    Arrays are indexed like the simulation grid but may be coarser; node
    (a, b, c) sits at physical (a * size_x / nx_p, ...), i.e. both grids
    share origin and box.  ``surface_z`` is the local z of the free
    surface in metres; nodes above it (z < surface_z) hold vacuum.
    """

    rho: np.ndarray
    lam: np.ndarray
    mu: np.ndarray
    surface_z: float

    def __post_init__(self):
        if not self.rho.shape == self.lam.shape == self.mu.shape:
            raise ModelError("parameter arrays must share one shape")

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.rho.shape

    @property
    def has_vacuum(self) -> bool:
        return bool(np.any(self.rho < VACUUM_DENSITY_THRESHOLD))


def is_vacuum(rho: float) -> bool:
    """Whether a (possibly interpolated) density reads as vacuum."""
    return rho < VACUUM_DENSITY_THRESHOLD


def default_parameter_shape(shape: tuple[int, int, int]) -> tuple[int, int, int]:
    return tuple(max(PARAMETER_GRID_MIN, n // PARAMETER_GRID_DIVISOR)
                 for n in shape)


def build_parameter_volume(model: LayeredModel, domain: SimulationDomain,
                           shape: tuple[int, int, int] | None = None
                           ) -> ParameterVolume:
    """Discretise a layered model onto a parameter grid.

    Each parameter cell takes the layer selected by its centre depth;
    cells above the free surface get vacuum values.  ``shape`` defaults
    to a quarter of the simulation grid per axis (at least 2).
    """
    if shape is None:
        shape = default_parameter_shape(domain.shape)
    npx, npy, npz = shape
    if min(shape) < PARAMETER_GRID_MIN:
        raise ModelError(f"parameter grid {shape} below minimum extent")
    # node depths in km; the grid spans the same box as the simulation
    z_m = np.arange(npz) * (domain.size_z / npz)
    depth_km = domain.bounds.depth_min + z_m / 1000.0

    rho_z = np.empty(npz)
    lam_z = np.empty(npz)
    mu_z = np.empty(npz)
    for c, d in enumerate(depth_km):
        if d < 0.0:
            rho_z[c] = VACUUM_DENSITY
            lam_z[c] = 0.0
            mu_z[c] = 0.0
        else:
            la = model.layer_at(d)
            lam, mu = lame_from_velocities(
                la.vp * 1000.0, la.vs * 1000.0, la.rho * 1000.0)
            rho_z[c] = la.rho * 1000.0
            lam_z[c] = lam
            mu_z[c] = mu

    full = (npx, npy, npz)
    return ParameterVolume(
        rho=np.broadcast_to(rho_z, full).copy(),
        lam=np.broadcast_to(lam_z, full).copy(),
        mu=np.broadcast_to(mu_z, full).copy(),
        surface_z=domain.surface_z,
    )


def sample_medium(volume: ParameterVolume, sim_shape: tuple[int, int, int],
                  x: float, y: float, z: float) -> tuple[float, float, float]:
    """Medium parameters (rho, lambda, mu) at a simulation-grid position.

    ``(x, y, z)`` are fractional simulation-grid coordinates; they are
    rescaled by the resolution ratio of the two grids (which cover the
    same physical box) and sampled trilinearly.
    """
    npx, npy, npz = volume.shape
    nx, ny, nz = sim_shape
    px = x * (npx / nx)
    py = y * (npy / ny)
    pz = z * (npz / nz)
    return (sample_trilinear(volume.rho, px, py, pz),
            sample_trilinear(volume.lam, px, py, pz),
            sample_trilinear(volume.mu, px, py, pz))
