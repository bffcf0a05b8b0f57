import math

import numpy as np
import pytest

from wavesim.sponge import (FACE_NAMES, SpongeProfile, build_sponge_weights,
                            sponge_weight)


class TestProfile:
    def test_defaults(self):
        p = SpongeProfile()
        assert p.width == 20
        assert p.strength == pytest.approx(0.015)
        # the top face stays open (free surface side), all others damp
        assert p.faces == {"x_min": True, "x_max": True, "y_min": True,
                           "y_max": True, "z_min": False, "z_max": True}

    def test_disabled(self):
        p = SpongeProfile.disabled()
        assert not any(p.faces.values())

    def test_face_names(self):
        assert set(FACE_NAMES) == {"x_min", "x_max", "y_min", "y_max",
                                   "z_min", "z_max"}


class TestWeights:
    def test_boundary_weight_frozen(self):
        # d=0 with defaults: exp(-(0.015*20)^2) = exp(-0.09)
        p = SpongeProfile()
        w = sponge_weight(0, 32, 32, p, (64, 64, 64))
        assert w == pytest.approx(math.exp(-0.09), rel=1e-12)
        assert w == pytest.approx(0.9139311852712282, rel=1e-12)

    def test_interior_weight_is_one(self):
        p = SpongeProfile()
        assert sponge_weight(32, 32, 30, p, (64, 64, 64)) == 1.0
        # z_min is open, so a cell near the top is undamped too
        assert sponge_weight(32, 32, 5, p, (64, 64, 64)) == 1.0

    def test_open_face_undamped(self):
        p = SpongeProfile()
        # k=0 is the z_min face, open by default; keep x/y interior
        assert sponge_weight(32, 32, 0, p, (64, 64, 64)) == 1.0
        q = SpongeProfile(z_min=True)
        assert sponge_weight(32, 32, 0, q, (64, 64, 64)) < 1.0

    def test_corner_multiplies_faces(self):
        p = SpongeProfile()
        wx = sponge_weight(0, 32, 32, p, (64, 64, 64))
        wy = sponge_weight(32, 0, 32, p, (64, 64, 64))
        corner = sponge_weight(0, 0, 32, p, (64, 64, 64))
        assert corner == pytest.approx(wx * wy, rel=1e-12)

    def test_monotone_towards_boundary(self):
        p = SpongeProfile()
        ws = [sponge_weight(i, 32, 32, p, (64, 64, 64)) for i in range(21)]
        assert all(a < b for a, b in zip(ws, ws[1:- 1]))
        assert ws[20] == 1.0

    def test_builder_matches_pointwise_bitwise(self):
        p = SpongeProfile(width=5, strength=0.05, z_min=True)
        shape = (12, 9, 7)
        w = build_sponge_weights(p, shape, np.float64)
        for i in range(shape[0]):
            for j in range(shape[1]):
                for k in range(shape[2]):
                    assert w[i, j, k] == sponge_weight(i, j, k, p, shape), \
                        (i, j, k)

    def test_builder_dtype(self):
        w32 = build_sponge_weights(SpongeProfile(), (8, 8, 8), np.float32)
        assert w32.dtype == np.float32

    def test_disabled_all_ones(self):
        w = build_sponge_weights(SpongeProfile.disabled(), (8, 8, 8),
                                 np.float64)
        assert np.all(w == 1.0)

    def test_zero_width_all_ones(self):
        w = build_sponge_weights(SpongeProfile(width=0), (8, 8, 8),
                                 np.float64)
        assert np.all(w == 1.0)
