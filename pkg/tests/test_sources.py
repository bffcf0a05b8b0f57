import math

import numpy as np
import pytest

from wavesim.errors import ConfigError, DomainError
from wavesim.fields import FieldSet
from wavesim.sources import (MomentTensorSource, SourcePlan,
                             SourceTimeFunction, evaluate_stf)
from tests.conftest import metric_domain

ISO = ((1e15, 0.0, 0.0), (0.0, 1e15, 0.0), (0.0, 0.0, 1e15))


def ricker(fp=0.5, delay=None):
    return SourceTimeFunction(kind="ricker", peak_frequency=fp, delay=delay)


class TestSourceTimeFunction:
    def test_default_delay(self):
        assert ricker(fp=0.025).delay == pytest.approx(60.0)
        assert ricker(fp=0.5).delay == pytest.approx(3.0)

    def test_explicit_delay_kept(self):
        assert ricker(fp=0.5, delay=10.0).delay == 10.0

    def test_validation(self):
        with pytest.raises(ConfigError):
            SourceTimeFunction(kind="sine", peak_frequency=1.0)
        with pytest.raises(ConfigError):
            SourceTimeFunction(kind="ricker", peak_frequency=0.0)

    def test_ricker_peak_is_one(self):
        stf = ricker(fp=0.3)
        assert evaluate_stf(stf, stf.delay) == 1.0

    def test_ricker_frozen_value(self):
        # u = (pi*fp*(t-delay))^2 = 1 when t-delay = 1/(pi*fp):
        # amplitude (1-2)*exp(-1) = -exp(-1)
        stf = ricker(fp=0.5)
        t = stf.delay + 1.0 / (math.pi * 0.5)
        assert evaluate_stf(stf, t) == pytest.approx(-math.exp(-1.0),
                                                     rel=1e-12)

    def test_ricker_zero_crossings(self):
        # zero where u = 1/2
        stf = ricker(fp=0.5)
        t = stf.delay + 1.0 / (math.pi * 0.5 * math.sqrt(2.0))
        assert evaluate_stf(stf, t) == pytest.approx(0.0, abs=1e-12)

    def test_ricker_even_symmetry(self):
        stf = ricker(fp=0.4)
        for off in (0.1, 0.5, 2.0):
            assert evaluate_stf(stf, stf.delay + off) == pytest.approx(
                evaluate_stf(stf, stf.delay - off), rel=1e-12)

    def test_ricker_spectrum_peaks_at_fp(self):
        # oracle: |FFT| of the wavelet peaks at the nominal frequency
        fp = 0.5
        stf = ricker(fp=fp)
        dt = 0.01
        n = 8192
        t = np.arange(n) * dt
        x = np.array([evaluate_stf(stf, float(ti)) for ti in t])
        spec = np.abs(np.fft.rfft(x))
        freqs = np.fft.rfftfreq(n, dt)
        assert freqs[np.argmax(spec)] == pytest.approx(fp, abs=0.02)

    def test_gaussian_derivative_odd_with_unit_peak(self):
        stf = SourceTimeFunction(kind="gaussian-derivative",
                                 peak_frequency=0.5)
        assert evaluate_stf(stf, stf.delay) == 0.0
        for off in (0.05, 0.2, 1.0):
            assert evaluate_stf(stf, stf.delay + off) == pytest.approx(
                -evaluate_stf(stf, stf.delay - off), rel=1e-12)
        # extremum of magnitude exactly 1 at a = +-1/sqrt(2)
        t_peak = stf.delay - 1.0 / (math.sqrt(2.0) * math.pi * 0.5)
        assert evaluate_stf(stf, t_peak) == pytest.approx(1.0, rel=1e-12)

    def test_negligible_before_onset(self):
        stf = ricker(fp=0.5)
        assert abs(evaluate_stf(stf, 0.0)) < 1e-8


class TestMomentTensorSource:
    def make(self, **kwargs):
        defaults = dict(moment=ISO, grid_position=(8.0, 8.0, 8.0),
                        stf=ricker())
        defaults.update(kwargs)
        return MomentTensorSource(**defaults)

    def test_symmetry_required(self):
        bad = ((1e15, 1.0, 0.0), (0.0, 1e15, 0.0), (0.0, 0.0, 1e15))
        with pytest.raises(ConfigError):
            self.make(moment=bad)

    def test_shape_required(self):
        with pytest.raises(ConfigError):
            self.make(moment=((1.0, 0.0), (0.0, 1.0)))

    def test_sign_validated(self):
        with pytest.raises(ConfigError):
            self.make(sign=2.0)
        assert self.make(sign=1).sign == 1
        assert self.make().sign == -1.0

    def test_peak_time_defaults_to_delay(self):
        src = self.make()
        assert src.peak_time == src.stf.delay

    def test_amplitude_peaks_at_peak_time(self):
        src = self.make(peak_time=42.0)
        assert src.amplitude(42.0) == 1.0
        assert src.amplitude(41.0) < 1.0

    def test_tensor_entries_order(self):
        m = ((1.0, 4.0, 5.0), (4.0, 2.0, 6.0), (5.0, 6.0, 3.0))
        src = self.make(moment=m)
        assert src.tensor_entries == (1.0, 2.0, 3.0, 4.0, 5.0, 6.0)


class TestSourcePlan:
    def test_outside_grid_rejected(self):
        domain = metric_domain(nx=8, ny=8, nz=8)
        src = MomentTensorSource(moment=ISO, grid_position=(9.0, 4.0, 4.0),
                                 stf=ricker())
        with pytest.raises(DomainError):
            SourcePlan(src, domain)

    def test_injection_total_on_node(self):
        # source exactly on a normal-stress node: all weight on one cell
        domain = metric_domain(nx=8, ny=8, nz=8, step=100.0, dt=0.004)
        src = MomentTensorSource(moment=ISO, grid_position=(4.0, 4.0, 4.0),
                                 stf=ricker(fp=0.5), peak_time=0.0)
        plan = SourcePlan(src, domain)
        fields = FieldSet.zeros(domain.shape, np.float64)
        t = 0.0  # amplitude(0) = stf at its own peak = 1
        plan.inject(fields, t, domain.dt)
        cell_volume = 100.0 ** 3
        expected = -1.0 * 1e15 * 1.0 * domain.dt / cell_volume
        assert fields.sxx[4, 4, 4] == pytest.approx(expected, rel=1e-12)
        assert fields.sxx.sum() == pytest.approx(expected, rel=1e-12)
        assert fields.syy[4, 4, 4] == pytest.approx(expected, rel=1e-12)
        assert fields.szz[4, 4, 4] == pytest.approx(expected, rel=1e-12)
        # no shear entries in an isotropic tensor
        assert not fields.sxy.any() and not fields.sxz.any() \
            and not fields.syz.any()

    def test_injection_weights_sum_and_spread(self):
        domain = metric_domain(nx=8, ny=8, nz=8, step=100.0, dt=0.004)
        src = MomentTensorSource(moment=ISO, grid_position=(4.25, 4.5, 4.75),
                                 stf=ricker(fp=0.5), peak_time=0.0)
        plan = SourcePlan(src, domain)
        fields = FieldSet.zeros(domain.shape, np.float64)
        plan.inject(fields, 0.0, domain.dt)
        expected_total = -1e15 * domain.dt / 100.0 ** 3
        assert fields.sxx.sum() == pytest.approx(expected_total, rel=1e-12)
        # fractional position spreads over the surrounding 8 nodes
        assert (fields.sxx != 0).sum() == 8

    def test_injection_linear_in_moment(self):
        domain = metric_domain(nx=8, ny=8, nz=8, step=100.0, dt=0.004)
        base = MomentTensorSource(moment=ISO, grid_position=(4.2, 4.1, 4.6),
                                  stf=ricker(fp=0.5), peak_time=0.0)
        double = MomentTensorSource(
            moment=tuple(tuple(2 * v for v in row) for row in ISO),
            grid_position=(4.2, 4.1, 4.6), stf=ricker(fp=0.5), peak_time=0.0)
        f1 = FieldSet.zeros(domain.shape, np.float64)
        f2 = FieldSet.zeros(domain.shape, np.float64)
        SourcePlan(base, domain).inject(f1, 0.0, domain.dt)
        SourcePlan(double, domain).inject(f2, 0.0, domain.dt)
        assert np.allclose(f2.sxx, 2.0 * f1.sxx, rtol=1e-12, atol=0.0)

    def test_shear_entries_go_to_shear_fields(self):
        domain = metric_domain(nx=8, ny=8, nz=8, step=100.0, dt=0.004)
        m = ((0.0, 1e15, 0.0), (1e15, 0.0, 0.0), (0.0, 0.0, 0.0))
        src = MomentTensorSource(moment=m, grid_position=(4.0, 4.0, 4.0),
                                 stf=ricker(fp=0.5), peak_time=0.0)
        fields = FieldSet.zeros(domain.shape, np.float64)
        SourcePlan(src, domain).inject(fields, 0.0, domain.dt)
        assert fields.sxy.any()
        assert not fields.sxx.any() and not fields.syy.any()
        assert not fields.szz.any()

    def test_sign_flips_polarity(self):
        domain = metric_domain(nx=8, ny=8, nz=8, step=100.0, dt=0.004)
        f_neg = FieldSet.zeros(domain.shape, np.float64)
        f_pos = FieldSet.zeros(domain.shape, np.float64)
        for sign, f in ((-1, f_neg), (1, f_pos)):
            src = MomentTensorSource(moment=ISO,
                                     grid_position=(4.0, 4.0, 4.0),
                                     stf=ricker(fp=0.5), peak_time=0.0,
                                     sign=sign)
            SourcePlan(src, domain).inject(f, 0.0, domain.dt)
        assert np.array_equal(f_neg.sxx, -f_pos.sxx)
