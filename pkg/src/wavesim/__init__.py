"""wavesim: 3D isotropic elastic wavefield simulation on a staggered grid.

Velocity-stress formulation, 4th-order finite differences in space,
explicit 2nd-order leapfrog in time, with a geographic front end
(layered Earth models, moment-tensor sources, station receivers) and
absorbing sponge boundaries.
"""

from .errors import (BackendUnavailableError, ConfigError, DomainError,
                     ModelError, WaveSimError)
from .fields import FieldSet
from .geometry import (EARTH_RADIUS_M, STAGGER_OFFSETS, GeographicBounds,
                       SimulationDomain, approximate_distance_km,
                       geographic_to_local, level_preset, local_to_geographic,
                       max_source_frequency, max_time_step)
from .medium import (LayeredModel, ParameterVolume, build_parameter_volume,
                     lame_from_velocities, sample_medium, sample_trilinear)
from .receivers import Receiver, Recorder, TraceSet
from .scenario import ResolvedScenario, load_file, resolve
from .solver import (RunResult, SolverState, StepReport, make_backend, run,
                     update_stresses, update_velocities)
from .sources import MomentTensorSource, SourcePlan, SourceTimeFunction
from .sponge import SpongeProfile, build_sponge_weights, sponge_weight

__version__ = "0.1.0"

__all__ = [
    "BackendUnavailableError", "ConfigError", "DomainError", "ModelError",
    "WaveSimError",
    "FieldSet",
    "EARTH_RADIUS_M", "STAGGER_OFFSETS", "GeographicBounds",
    "SimulationDomain", "approximate_distance_km", "geographic_to_local",
    "level_preset", "local_to_geographic", "max_source_frequency",
    "max_time_step",
    "LayeredModel", "ParameterVolume", "build_parameter_volume",
    "lame_from_velocities", "sample_medium", "sample_trilinear",
    "Receiver", "Recorder", "TraceSet",
    "ResolvedScenario", "load_file", "resolve",
    "RunResult", "SolverState", "StepReport", "make_backend", "run",
    "update_stresses", "update_velocities",
    "MomentTensorSource", "SourcePlan", "SourceTimeFunction",
    "SpongeProfile", "build_sponge_weights", "sponge_weight",
    "__version__",
]
