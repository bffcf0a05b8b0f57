"""Moment-tensor point sources and their time functions."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError
from .geometry import STAGGER_OFFSETS, SimulationDomain
from .medium import mirrored_index

STF_KINDS = ("ricker", "gaussian-derivative")

#: Default onset delay in wavelet periods: the amplitude is effectively
#: zero this long before the peak.
DEFAULT_DELAY_PERIODS = 1.5

# stress component receiving each independent moment-tensor entry
_TENSOR_COMPONENTS = ("sxx", "syy", "szz", "sxy", "sxz", "syz")


@dataclass(frozen=True)
class SourceTimeFunction:
    """Normalised source wavelet.

    ``delay`` is the wavelet's own peak time; it defaults to
    1.5 / peak_frequency, which leaves the amplitude negligible at the
    start of the wavelet's clock.
    """

    kind: str
    peak_frequency: float
    delay: float | None = None

    def __post_init__(self):
        if self.kind not in STF_KINDS:
            raise ConfigError(f"unknown source time function {self.kind!r}; "
                              f"expected one of {STF_KINDS}")
        if self.peak_frequency <= 0.0:
            raise ConfigError("peak_frequency must be positive")
        if self.delay is None:
            object.__setattr__(self, "delay",
                               DEFAULT_DELAY_PERIODS / self.peak_frequency)


def evaluate_stf(stf: SourceTimeFunction, t: float) -> float:
    """Wavelet amplitude at time ``t`` on the wavelet's own clock.

    The ricker form is (1 - 2u) * exp(-u) with
    u = (pi * f_p * (t - delay))**2, peaking at exactly 1 when
    t == delay; the gaussian-derivative form is odd around the delay
    with peak magnitude 1.
    """
    a = math.pi * stf.peak_frequency * (t - stf.delay)
    if stf.kind == "ricker":
        u = a * a
        return (1.0 - 2.0 * u) * math.exp(-u)
    # gaussian-derivative
    return -math.sqrt(2.0) * a * math.exp(0.5 - a * a)


@dataclass(frozen=True)
class MomentTensorSource:
    """Point source described by a symmetric moment tensor in N*m.

    ``grid_position`` is the fractional cell position of the centroid;
    ``peak_time`` is the simulation time (seconds from the start of the
    run) at which the wavelet peak fires.  ``sign`` flips the injection
    polarity.
    """

    moment: tuple
    grid_position: tuple
    stf: SourceTimeFunction
    peak_time: float | None = None
    sign: float = -1.0

    def __post_init__(self):
        m = np.asarray(self.moment, dtype=np.float64)
        if m.shape != (3, 3):
            raise ConfigError("moment tensor must be 3x3")
        if not np.allclose(m, m.T, rtol=1e-12, atol=0.0):
            raise ConfigError("moment tensor must be symmetric")
        object.__setattr__(self, "moment",
                           tuple(tuple(float(v) for v in row) for row in m))
        if len(self.grid_position) != 3:
            raise ConfigError("grid_position must have three entries")
        if self.sign not in (-1.0, 1.0, -1, 1):
            raise ConfigError("sign must be +1 or -1")
        if self.peak_time is None:
            object.__setattr__(self, "peak_time", self.stf.delay)

    @property
    def tensor_entries(self) -> tuple:
        """(mxx, myy, mzz, mxy, mxz, myz) in N*m."""
        m = self.moment
        return (m[0][0], m[1][1], m[2][2], m[0][1], m[0][2], m[1][2])

    def amplitude(self, t: float) -> float:
        """Wavelet amplitude at simulation time ``t`` (peaks at peak_time)."""
        return evaluate_stf(self.stf, t - self.peak_time + self.stf.delay)


class SourcePlan:
    """Precomputed injection stencil for one source on one grid.

    Each moment-tensor entry is spread over the 8 nodes of its stress
    component's staggered lattice surrounding the source position, with
    trilinear weights; the amount added per step is
    sign * m_c * stf(t) * dt / cell_volume.
    """

    def __init__(self, source: MomentTensorSource, domain: SimulationDomain):
        nx, ny, nz = domain.shape
        gx, gy, gz = source.grid_position
        if not (0.0 <= gx <= nx - 1 and 0.0 <= gy <= ny - 1
                and 0.0 <= gz <= nz - 1):
            raise DomainError(
                f"source grid position {source.grid_position} outside the "
                f"grid {domain.shape}")
        self.source = source
        self.cell_volume = domain.dx * domain.dy * domain.dz
        self.targets = []
        for comp, m_c in zip(_TENSOR_COMPONENTS, source.tensor_entries):
            ox, oy, oz = STAGGER_OFFSETS[comp]
            cx, cy, cz = gx - ox, gy - oy, gz - oz
            ix, iy, iz = math.floor(cx), math.floor(cy), math.floor(cz)
            tx, ty, tz = cx - ix, cy - iy, cz - iz
            nodes = []
            for dx_ in (0, 1):
                for dy_ in (0, 1):
                    for dz_ in (0, 1):
                        wgt = ((tx if dx_ else 1.0 - tx)
                               * (ty if dy_ else 1.0 - ty)
                               * (tz if dz_ else 1.0 - tz))
                        idx = (mirrored_index(ix + dx_, nx),
                               mirrored_index(iy + dy_, ny),
                               mirrored_index(iz + dz_, nz))
                        nodes.append((idx, wgt))
            self.targets.append((comp, m_c, nodes))

    def inject(self, fields, t: float, dt: float):
        """Add the step's moment contribution to the stress fields."""
        amp = self.source.amplitude(t)
        base = self.source.sign * amp * dt / self.cell_volume
        for comp, m_c, nodes in self.targets:
            arr = fields.component(comp)
            amount = base * m_c
            for idx, wgt in nodes:
                arr[idx] += arr.dtype.type(amount * wgt)
