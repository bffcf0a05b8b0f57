import numpy as np
import pytest

from wavesim.errors import DomainError
from wavesim.fields import (ALL_COMPONENTS, STRESS_COMPONENTS,
                            VELOCITY_COMPONENTS, FieldSet)


class TestFieldSet:
    def test_zeros(self):
        f = FieldSet.zeros((4, 5, 6))
        assert f.shape == (4, 5, 6)
        assert f.dtype == np.float32
        for name in ALL_COMPONENTS:
            arr = f.component(name)
            assert arr.shape == (4, 5, 6)
            assert not arr.any()

    def test_component_groups(self):
        assert set(VELOCITY_COMPONENTS) == {"vx", "vy", "vz"}
        assert len(STRESS_COMPONENTS) == 6
        f = FieldSet.zeros((4, 4, 4))
        assert len(f.velocities()) == 3
        assert len(f.stresses()) == 6

    def test_dtype_float64(self):
        f = FieldSet.zeros((4, 4, 4), np.float64)
        assert f.dtype == np.float64

    def test_shape_mismatch_rejected(self):
        f = FieldSet.zeros((4, 4, 4))
        bad = dict(vars(f))
        bad["vx"] = np.zeros((4, 4, 5), dtype=np.float32)
        with pytest.raises(DomainError):
            FieldSet(**{k: bad[k] for k in ALL_COMPONENTS})

    def test_unknown_component(self):
        f = FieldSet.zeros((4, 4, 4))
        with pytest.raises(DomainError):
            f.component("pressure")

    def test_copy_is_independent(self):
        f = FieldSet.zeros((4, 4, 4))
        g = f.copy()
        g.vx[0, 0, 0] = 1.0
        assert f.vx[0, 0, 0] == 0.0

    def test_all_finite(self):
        f = FieldSet.zeros((4, 4, 4))
        assert f.all_finite()
        f.syz[1, 2, 3] = np.nan
        assert not f.all_finite()
        f.syz[1, 2, 3] = np.inf
        assert not f.all_finite()
