import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavesim.errors import ModelError
from wavesim.medium import (PARAMETER_GRID_MIN, VACUUM_DENSITY,
                            LayeredModel, build_parameter_volume,
                            default_parameter_shape, is_vacuum,
                            lame_from_velocities, mirrored_index,
                            mirrored_indices, sample_medium,
                            sample_trilinear, sample_trilinear_lattice)
from tests.conftest import metric_domain

# layered crust-over-mantle model of the bundled scenario
# (top km, vp km/s, vs km/s, rho g/cm^3)
CRUST_ROWS = [
    (0.0, 4.90, 2.816, 2.50),
    (3.0, 5.40, 3.103, 2.60),
    (5.0, 6.00, 3.448, 2.70),
    (7.0, 6.90, 3.966, 2.80),
    (20.0, 7.60, 4.368, 3.10),
    (26.0, 7.80, 4.483, 3.26),
    (34.0, 8.00, 4.598, 3.30),
]


class TestLame:
    def test_frozen_first_layer(self):
        # rho=2500 kg/m^3, vp=4900 m/s, vs=2816 m/s
        lam, mu = lame_from_velocities(4900.0, 2816.0, 2500.0)
        assert mu == pytest.approx(1.982464e10, rel=1e-12)
        assert lam == pytest.approx(2.037572e10, rel=1e-12)

    def test_negative_lambda_rejected(self):
        # vs too close to vp: lambda = rho*(vp^2 - 2*vs^2) < 0
        with pytest.raises(ModelError):
            lame_from_velocities(1000.0, 900.0, 1000.0)

    def test_nonphysical_rejected(self):
        with pytest.raises(ModelError):
            lame_from_velocities(-1.0, 0.0, 1000.0)
        with pytest.raises(ModelError):
            lame_from_velocities(1000.0, 500.0, 0.0)

    @given(vp=st.floats(1000, 10000), ratio=st.floats(1.5, 3.0),
           rho=st.floats(1000, 4000))
    @settings(max_examples=50, deadline=None)
    def test_roundtrip(self, vp, ratio, rho):
        vs = vp / ratio
        lam, mu = lame_from_velocities(vp, vs, rho)
        assert np.sqrt(mu / rho) == pytest.approx(vs, rel=1e-12)
        assert np.sqrt((lam + 2 * mu) / rho) == pytest.approx(vp, rel=1e-12)


class TestLayeredModel:
    def model(self):
        return LayeredModel.from_rows(CRUST_ROWS)

    def test_layer_lookup(self):
        m = self.model()
        assert m.layer_at(0.0).vp == 4.90
        assert m.layer_at(2.9).vp == 4.90
        assert m.layer_at(3.0).vp == 5.40
        assert m.layer_at(4.0).vp == 5.40
        assert m.layer_at(100.0).vp == 8.00

    def test_above_first_layer(self):
        with pytest.raises(ModelError):
            self.model().layer_at(-0.1)

    def test_velocity_extremes_si(self):
        m = self.model()
        assert m.vel_max == pytest.approx(8000.0)
        assert m.vel_min == pytest.approx(2816.0)

    def test_tops_must_increase(self):
        with pytest.raises(ModelError):
            LayeredModel.from_rows([(0.0, 4, 2, 2), (0.0, 5, 3, 2.5)])
        with pytest.raises(ModelError):
            LayeredModel.from_rows([(3.0, 4, 2, 2), (1.0, 5, 3, 2.5)])

    def test_empty_rejected(self):
        with pytest.raises(ModelError):
            LayeredModel.from_rows([])


class TestMirroredIndex:
    def brute_force(self, i, n):
        # explicit reflected sequence of period 2n
        seq = list(range(n)) + list(reversed(range(n)))
        return seq[i % (2 * n)]

    @pytest.mark.parametrize("i,n,expected", [
        (-1, 8, 0), (9, 8, 6), (3, 8, 3), (-256, 64, 0),
        (8, 8, 7), (15, 8, 0), (16, 8, 0), (-2, 8, 1),
    ])
    def test_frozen(self, i, n, expected):
        assert mirrored_index(i, n) == expected

    @pytest.mark.parametrize("n", [1, 5, 8, 64])
    def test_matches_brute_force(self, n):
        for i in range(-4 * n, 4 * n + 1):
            assert mirrored_index(i, n) == self.brute_force(i, n), (i, n)

    @pytest.mark.parametrize("n", [3, 7])
    def test_reflection_identities(self, n):
        for i in range(-2 * n, 2 * n):
            assert mirrored_index(i, n) == mirrored_index(i + 2 * n, n)
            assert mirrored_index(-1 - i, n) == mirrored_index(i, n)

    def test_vectorised_matches_scalar(self):
        idx = np.arange(-40, 40)
        got = mirrored_indices(idx, 10)
        want = np.array([mirrored_index(int(i), 10) for i in idx])
        assert np.array_equal(got, want)


class TestTrilinear:
    def test_exact_at_nodes(self, rng):
        vol = rng.standard_normal((4, 5, 6))
        for i in (0, 2, 3):
            for j in (0, 4):
                for k in (1, 5):
                    assert sample_trilinear(vol, float(i), float(j),
                                            float(k)) == vol[i, j, k]

    def test_linear_along_axis(self, rng):
        vol = rng.standard_normal((4, 4, 4))
        a = sample_trilinear(vol, 1.0, 2.0, 2.0)
        b = sample_trilinear(vol, 2.0, 2.0, 2.0)
        mid = sample_trilinear(vol, 1.5, 2.0, 2.0)
        assert mid == pytest.approx(0.5 * (a + b), rel=1e-12)

    def test_mirrors_past_edges(self, rng):
        vol = rng.standard_normal((4, 4, 4))
        # -0.5 lies between mirrored node -1 (==0) and node 0
        assert sample_trilinear(vol, -0.5, 1.0, 1.0) == pytest.approx(
            vol[0, 1, 1])
        assert sample_trilinear(vol, 3.5, 1.0, 1.0) == pytest.approx(
            vol[3, 1, 1])

    @given(st.integers(0, 1000))
    @settings(max_examples=30, deadline=None)
    def test_lattice_matches_pointwise(self, seed):
        rng = np.random.default_rng(seed)
        vol = rng.standard_normal((3, 4, 5))
        xs = rng.uniform(-2.0, 5.0, size=4)
        ys = rng.uniform(-2.0, 6.0, size=3)
        zs = rng.uniform(-2.0, 7.0, size=5)
        grid = sample_trilinear_lattice(vol, xs, ys, zs)
        for a, x in enumerate(xs):
            for b, y in enumerate(ys):
                for c, z in enumerate(zs):
                    assert grid[a, b, c] == sample_trilinear(vol, x, y, z), \
                        (x, y, z)


class TestParameterVolume:
    def test_default_shape(self):
        assert default_parameter_shape((64, 64, 32)) == (16, 16, 8)
        assert default_parameter_shape((4, 4, 4)) == \
            (PARAMETER_GRID_MIN,) * 3

    def test_vacuum_above_surface(self):
        model = LayeredModel.from_rows(CRUST_ROWS)
        domain = metric_domain(nx=16, ny=16, nz=16, step=3750.0,
                               depth_min_km=-30.0)
        vol = build_parameter_volume(model, domain, (8, 8, 8))
        assert vol.has_vacuum
        # param node depths: -30 + a*7.5 km; nodes 0..3 are above ground
        assert np.all(vol.rho[:, :, :4] == VACUUM_DENSITY)
        assert np.all(vol.lam[:, :, :4] == 0.0)
        assert np.all(vol.mu[:, :, :4] == 0.0)
        assert np.all(vol.rho[:, :, 4:] >= 2500.0)
        assert is_vacuum(vol.rho[0, 0, 0])
        assert not is_vacuum(vol.rho[0, 0, 5])

    def test_layer_values_below_surface(self):
        model = LayeredModel.from_rows(CRUST_ROWS)
        domain = metric_domain(nx=8, ny=8, nz=8, step=1000.0,
                               depth_min_km=0.0)
        vol = build_parameter_volume(model, domain, (8, 8, 8))
        assert not vol.has_vacuum
        # node depth k km: layer tops at 0 and 3 and 5 and 7 km
        assert vol.rho[0, 0, 0] == pytest.approx(2500.0)
        assert vol.rho[0, 0, 3] == pytest.approx(2600.0)
        assert vol.rho[0, 0, 7] == pytest.approx(2800.0)

    def test_sample_medium_equal_grids_exact(self):
        model = LayeredModel.from_rows(CRUST_ROWS)
        domain = metric_domain(nx=8, ny=8, nz=8, step=1000.0)
        vol = build_parameter_volume(model, domain, (8, 8, 8))
        for i in range(8):
            rho, lam, mu = sample_medium(vol, domain.shape,
                                         float(i), float(i), float(i))
            assert rho == vol.rho[i, i, i]
            assert lam == vol.lam[i, i, i]
            assert mu == vol.mu[i, i, i]

    def test_sample_medium_coarse_grid_interpolates(self):
        model = LayeredModel.from_rows(CRUST_ROWS)
        domain = metric_domain(nx=8, ny=8, nz=8, step=1000.0)
        vol = build_parameter_volume(model, domain, (4, 4, 4))
        # sim node 2 maps to parameter node 1 (depth 2 km): first layer
        rho, _, _ = sample_medium(vol, domain.shape, 2.0, 2.0, 2.0)
        assert rho == pytest.approx(2500.0)
        # sim node 7 maps to parameter coordinate 3.5, past the last node
        # (depth 6 km); the mirrored neighbour is the same node
        rho, _, _ = sample_medium(vol, domain.shape, 7.0, 7.0, 7.0)
        assert rho == pytest.approx(2700.0)
