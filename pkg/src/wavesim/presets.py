"""Built-in scenario documents.

Each preset is a plain scenario dict, the same shape a YAML file would
load to, so the command line treats preset names and file paths
interchangeably.
"""

import copy

# 2016-01-17 Oriente fault earthquake south of Cuba, M_w ~5.8.  Moment
# tensor in N*m; station altitudes in metres above sea level.
_CUBA_2016 = {
    "name": "cuba-2016",
    "domain": {
        "bounds": {
            "lat_min": 17.78, "lat_max": 21.63,
            "lon_min": -78.27, "lon_max": -71.86,
            "depth_min_km": -30.0, "depth_max_km": 90.0,
        },
        "level": 0,
        "start_time": "2016-01-17T08:29:25+00:00",
    },
    "medium": {
        # top_km, vp_km_s, vs_km_s, rho_g_cm3; crust over mantle
        "layers": [
            [0.0, 4.90, 2.816, 2.50],
            [3.0, 5.40, 3.103, 2.60],
            [5.0, 6.00, 3.448, 2.70],
            [7.0, 6.90, 3.966, 2.80],
            [20.0, 7.60, 4.368, 3.10],
            [26.0, 7.80, 4.483, 3.26],
            [34.0, 8.00, 4.598, 3.30],
        ],
    },
    "source": {
        "location": {"latitude": 19.749, "longitude": -76.09,
                     "depth_km": 7.0},
        "moment_tensor_nm": [
            [-2.37e14, -3.39e15, -7.79e14],
            [-3.39e15, -4.31e16, 4.60e15],
            [-7.79e14, 4.60e15, 4.33e16],
        ],
        "centroid_time": "2016-01-17T08:30:25.08+00:00",
        "stf": {"kind": "ricker", "peak_frequency_hz": 0.025},
    },
    "receivers": [
        {"name": "CHIV", "latitude": 19.9763, "longitude": -76.4147,
         "altitude_m": 20.0},
        {"name": "RCC", "latitude": 19.9942, "longitude": -75.6958,
         "altitude_m": 100.0},
        {"name": "LMGC", "latitude": 20.064, "longitude": -77.005,
         "altitude_m": 167.0},
        {"name": "GTBY", "latitude": 19.92681, "longitude": -75.11081,
         "altitude_m": 79.2},
        {"name": "MASC", "latitude": 20.175, "longitude": -74.231,
         "altitude_m": 350.0},
        {"name": "CCCC", "latitude": 21.1934, "longitude": -77.4173,
         "altitude_m": 89.55},
        {"name": "MTDJ", "latitude": 18.22606, "longitude": -77.53453,
         "altitude_m": 925.0},
        {"name": "LGNH", "latitude": 18.511, "longitude": -72.6058,
         "altitude_m": 62.0},
    ],
    "run": {"medium_cache": True},
}

# Small uniform half-space for smoke tests and demos: one layer, source
# mid-domain, a ring of four receivers.  Runs in seconds at its default
# size.
_HALFSPACE_DEMO = {
    "name": "halfspace-demo",
    "domain": {
        "bounds": {
            "lat_min": 0.0, "lat_max": 0.6,
            "lon_min": 0.0, "lon_max": 0.6,
            "depth_min_km": 0.0, "depth_max_km": 33.0,
        },
        "grid": {"nx": 64, "ny": 64, "nz": 32},
        "dt": 0.05,
        "n_steps": 400,
    },
    "medium": {"layers": [[0.0, 6.0, 3.464, 2.70]]},
    "source": {
        "location": {"latitude": 0.3, "longitude": 0.3, "depth_km": 16.0},
        "moment_tensor_nm": [
            [1.0e15, 0.0, 0.0],
            [0.0, 1.0e15, 0.0],
            [0.0, 0.0, 1.0e15],
        ],
        "stf": {"kind": "ricker", "peak_frequency_hz": 0.35},
    },
    "receivers": [
        {"name": "N1", "latitude": 0.42, "longitude": 0.30, "depth_km": 16.0},
        {"name": "S1", "latitude": 0.18, "longitude": 0.30, "depth_km": 16.0},
        {"name": "E1", "latitude": 0.30, "longitude": 0.42, "depth_km": 16.0},
        {"name": "W1", "latitude": 0.30, "longitude": 0.18, "depth_km": 16.0},
    ],
    "sponge": {"width": 8},
    "run": {"medium_cache": True},
}

_PRESETS = {
    "cuba-2016": _CUBA_2016,
    "halfspace-demo": _HALFSPACE_DEMO,
}


def preset_names() -> tuple:
    return tuple(sorted(_PRESETS))


def preset_scenario(name: str) -> dict:
    """Deep copy of a preset scenario document."""
    if name not in _PRESETS:
        from .errors import ConfigError
        raise ConfigError(f"unknown preset {name!r}; "
                          f"available: {', '.join(preset_names())}")
    return copy.deepcopy(_PRESETS[name])
