import numpy as np
import pytest
from hypothesis import given, strategies as st

from uwcam.spectral import (DEFAULT_GRID, Spectrum, UnitRole, WavelengthGrid,
                            combine, constant, from_samples, integrate,
                            multiply, resample, scale)


class TestWavelengthGrid:
    def test_default_grid_shape(self):
        assert DEFAULT_GRID.points[0] == 350.0
        assert DEFAULT_GRID.points[-1] == 800.0
        assert len(DEFAULT_GRID) == 91

    def test_rejects_descending(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            WavelengthGrid(np.array([500.0, 400.0]))

    def test_rejects_single_point(self):
        with pytest.raises(ValueError):
            WavelengthGrid(np.array([500.0]))

    def test_rejects_out_of_band(self):
        with pytest.raises(ValueError):
            WavelengthGrid(np.array([200.0, 500.0]))
        with pytest.raises(ValueError):
            WavelengthGrid(np.array([500.0, 1200.0]))


class TestSpectrum:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            Spectrum(DEFAULT_GRID, np.ones(3))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            from_samples([400, 500], [1.0, -0.1])

    def test_values_read_only(self):
        s = constant(1.0)
        with pytest.raises(ValueError):
            s.values[0] = 2.0


class TestResample:
    def test_identity_on_same_grid(self):
        s = constant(0.7)
        out = resample(s, DEFAULT_GRID)
        assert np.array_equal(out.values, s.values)

    def test_linear_midpoint(self):
        s = from_samples([400.0, 500.0], [1.0, 3.0])
        out = resample(s, WavelengthGrid(np.array([400.0, 450.0, 500.0])))
        assert out.values[1] == 2.0

    def test_flux_like_zero_outside_domain(self):
        s = from_samples([400.0, 500.0], [1.0, 1.0], UnitRole.IRRADIANCE)
        out = resample(s, WavelengthGrid(np.array([550.0, 600.0])))
        assert np.all(out.values == 0.0)

    def test_dimensionless_clamps_outside_domain(self):
        s = from_samples([400.0, 500.0], [0.2, 0.8])
        out = resample(s, WavelengthGrid(np.array([350.0, 600.0])))
        assert out.values[0] == 0.2
        assert out.values[1] == 0.8


class TestIntegrate:
    def test_constant_rectangle(self):
        s = from_samples(np.arange(400.0, 701.0, 5.0), np.ones(61))
        assert integrate(s) == pytest.approx(300.0, rel=1e-12)

    def test_all_zero(self):
        s = from_samples([400.0, 700.0], [0.0, 0.0])
        assert integrate(s) == 0.0

    def test_linear_ramp_triangle(self):
        wl = np.linspace(500.0, 600.0, 11)
        s = from_samples(wl, (wl - 500.0) / 100.0)
        assert integrate(s) == pytest.approx(50.0, rel=1e-12)

    @given(st.floats(min_value=0.0, max_value=1e6))
    def test_linearity_in_scale(self, alpha):
        wl = np.linspace(400.0, 700.0, 31)
        values = np.abs(np.sin(wl / 40.0)) + 0.1
        s = from_samples(wl, values)
        scaled = scale(s, alpha)
        assert integrate(scaled) == pytest.approx(alpha * integrate(s), rel=1e-12, abs=1e-300)

    def test_trapezoid_exact_on_refined_piecewise_linear(self):
        # Refining the grid 10x must not change the integral of a
        # piecewise-linear spectrum: trapezoid is exact on linear pieces.
        wl = np.arange(400.0, 701.0, 10.0)
        rng = np.random.default_rng(7)
        s = from_samples(wl, rng.uniform(0.0, 2.0, wl.size))
        fine = WavelengthGrid(np.arange(400.0, 700.01, 1.0))
        assert integrate(resample(s, fine)) == pytest.approx(integrate(s), rel=1e-12)


class TestCombine:
    def test_multiply_by_ones_is_identity(self):
        s = constant(0.4, unit_role=UnitRole.IRRADIANCE)
        ones = constant(1.0)
        out = multiply(s, ones)
        assert np.array_equal(out.values, s.values)
        assert out.unit_role is UnitRole.IRRADIANCE

    def test_scale_by_zero(self):
        s = constant(3.0, unit_role=UnitRole.RADIANCE)
        assert np.all(scale(s, 0.0).values == 0.0)

    def test_pointwise_product(self):
        a = from_samples([400.0, 500.0], [1.0, 2.0], UnitRole.RADIANT_FLUX)
        b = from_samples([400.0, 500.0], [0.5, 0.25])
        out = multiply(a, b)
        assert np.array_equal(out.values, [0.5, 0.5])

    def test_rejects_two_flux_like(self):
        a = constant(1.0, unit_role=UnitRole.IRRADIANCE)
        b = constant(1.0, unit_role=UnitRole.RADIANCE)
        with pytest.raises(ValueError, match="dimensionally invalid"):
            multiply(a, b)

    def test_rejects_mismatched_grids(self):
        a = constant(1.0)
        b = from_samples([400.0, 500.0], [1.0, 1.0])
        with pytest.raises(ValueError, match="share a grid"):
            multiply(a, b)

    def test_combine_dispatch(self):
        s = constant(2.0)
        assert np.all(combine(s, 3.0, op="scale").values == 6.0)
        assert np.all(combine(s, constant(0.5), op="multiply").values == 1.0)
        with pytest.raises(ValueError):
            combine(s, s, op="divide")


@given(st.lists(st.floats(min_value=0.0, max_value=100.0), min_size=2, max_size=40))
def test_resample_idempotent_on_own_grid(values):
    wl = np.linspace(400.0, 700.0, len(values))
    s = from_samples(wl, values)
    again = resample(resample(s, s.grid), s.grid)
    assert np.array_equal(again.values, s.values)
