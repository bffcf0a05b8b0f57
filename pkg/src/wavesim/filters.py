"""Band-pass filtering and trace comparison metrics."""

import numpy as np
from scipy.signal import butter, filtfilt

from .errors import ConfigError

FILTER_ORDER = 4


def bandpass(x: np.ndarray, dt: float, f_lo: float, f_hi: float,
             order: int = FILTER_ORDER) -> np.ndarray:
    """Zero-phase Butterworth band-pass along the last axis.

    The filter of the given design order is applied forward and backward
    (no phase shift, squared magnitude response).  Corners must satisfy
    0 < f_lo < f_hi < Nyquist.
    """
    if dt <= 0.0:
        raise ConfigError("dt must be positive")
    nyq = 0.5 / dt
    if not 0.0 < f_lo < f_hi < nyq:
        raise ConfigError(
            f"band [{f_lo}, {f_hi}] Hz invalid for Nyquist {nyq} Hz")
    b, a = butter(order, [f_lo / nyq, f_hi / nyq], btype="band")
    return filtfilt(b, a, x, axis=-1)


def rms(x: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.square(np.asarray(x, dtype=np.float64)))))


def rms_error(sim: np.ndarray, ref: np.ndarray) -> float:
    """Root-mean-square difference of two equal-length series."""
    sim = np.asarray(sim, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    if sim.shape != ref.shape:
        raise ConfigError(f"shape mismatch {sim.shape} vs {ref.shape}")
    return float(np.sqrt(np.mean(np.square(sim - ref))))


def relative_error(sim: np.ndarray, ref: np.ndarray) -> float:
    """rms_error normalised by the rms of the reference.

    Zero reference: 0.0 when the simulation is zero too, otherwise inf.
    """
    err = rms_error(sim, ref)
    denom = rms(ref)
    if denom == 0.0:
        return 0.0 if err == 0.0 else float("inf")
    return err / denom
