"""Wavelength grid and spectrum arithmetic.

Every quantity that varies with wavelength (radiant flux, irradiance,
radiance, reflectance, quantum efficiency, transmission) is represented as a
Spectrum: values sampled on an ascending nanometer grid, interpreted as a
piecewise-linear function between samples. Integration is trapezoidal, which
is exact for that representation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

WAVELENGTH_MIN_NM = 300.0
WAVELENGTH_MAX_NM = 1100.0


class UnitRole(enum.Enum):
    RADIANT_FLUX = "radiant_flux"        # W/nm
    IRRADIANCE = "irradiance"            # W/(m^2 nm)
    RADIANCE = "radiance"                # W/(m^2 sr nm)
    DIMENSIONLESS = "dimensionless"


FLUX_LIKE = frozenset({UnitRole.RADIANT_FLUX, UnitRole.IRRADIANCE, UnitRole.RADIANCE})


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.asarray(arr, dtype=float).copy()
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class WavelengthGrid:
    """Strictly increasing wavelengths [nm], at least two points."""

    points: np.ndarray

    def __post_init__(self):
        pts = _readonly(self.points)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("wavelength grid needs at least 2 points")
        if not np.all(np.diff(pts) > 0):
            raise ValueError("wavelength grid must be strictly increasing")
        if pts[0] < WAVELENGTH_MIN_NM or pts[-1] > WAVELENGTH_MAX_NM:
            raise ValueError(
                f"wavelengths must lie within [{WAVELENGTH_MIN_NM:g}, {WAVELENGTH_MAX_NM:g}] nm"
            )
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return int(self.points.size)

    def __eq__(self, other) -> bool:
        return isinstance(other, WavelengthGrid) and np.array_equal(self.points, other.points)


# Default evaluation grid: 350-800 nm at 5 nm, covering visible-range light
# spectra plus sensor QE tails at typical published table resolution.
DEFAULT_GRID = WavelengthGrid(np.arange(350.0, 800.0 + 2.5, 5.0))


@dataclass(frozen=True)
class Spectrum:
    """Per-wavelength values on a grid, with a declared unit role.

    Values are non-negative. Fraction-valued roles (QE, reflectance,
    transmission) are additionally bounded by 1; that bound is enforced by
    the profile validators, since plain dimensionless shapes (e.g. normalized
    emission spectra) are densities and not capped.
    """

    grid: WavelengthGrid
    values: np.ndarray
    unit_role: UnitRole = UnitRole.DIMENSIONLESS

    def __post_init__(self):
        vals = _readonly(self.values)
        if vals.ndim != 1 or vals.size != len(self.grid):
            raise ValueError("values length must match grid length")
        if np.any(vals < 0) or not np.all(np.isfinite(vals)):
            raise ValueError("spectrum values must be finite and non-negative")
        object.__setattr__(self, "values", vals)

    @property
    def wavelengths(self) -> np.ndarray:
        return self.grid.points

    def with_values(self, values: np.ndarray, unit_role: UnitRole | None = None) -> "Spectrum":
        return Spectrum(self.grid, values, unit_role or self.unit_role)


def constant(value: float, grid: WavelengthGrid = DEFAULT_GRID,
             unit_role: UnitRole = UnitRole.DIMENSIONLESS) -> Spectrum:
    return Spectrum(grid, np.full(len(grid), float(value)), unit_role)


def from_samples(wavelengths_nm, values, unit_role: UnitRole = UnitRole.DIMENSIONLESS) -> Spectrum:
    return Spectrum(WavelengthGrid(np.asarray(wavelengths_nm, float)),
                    np.asarray(values, float), unit_role)


def resample(s: Spectrum, target: WavelengthGrid) -> Spectrum:
    """Linear interpolation onto `target`.

    Outside the source domain, dimensionless spectra clamp to the nearest
    endpoint value; flux-like spectra fall to zero (no emission there).
    """
    if s.grid == target:
        return Spectrum(target, s.values, s.unit_role)
    if s.unit_role in FLUX_LIKE:
        left: float = 0.0
        right: float = 0.0
    else:
        left = float(s.values[0])
        right = float(s.values[-1])
    vals = np.interp(target.points, s.grid.points, s.values, left=left, right=right)
    return Spectrum(target, vals, s.unit_role)


def integrate(s: Spectrum) -> float:
    """Trapezoidal integral of the spectrum over wavelength [nm]."""
    return float(np.trapezoid(s.values, s.grid.points))


def multiply(a: Spectrum, b: Spectrum, result_role: UnitRole | None = None) -> Spectrum:
    """Pointwise product of two spectra on a common grid.

    Multiplying two flux-like spectra is dimensionally invalid and rejected.
    The result role follows dimensional analysis: the flux-like operand's
    role survives, unless the caller declares a different `result_role`
    (e.g. a Lambertian reflection turns irradiance into radiance).
    """
    if a.grid != b.grid:
        raise ValueError("spectra must share a grid; resample first")
    if a.unit_role in FLUX_LIKE and b.unit_role in FLUX_LIKE:
        raise ValueError(
            f"cannot multiply {a.unit_role.value} by {b.unit_role.value}: dimensionally invalid"
        )
    if result_role is None:
        if a.unit_role in FLUX_LIKE:
            result_role = a.unit_role
        elif b.unit_role in FLUX_LIKE:
            result_role = b.unit_role
        else:
            result_role = UnitRole.DIMENSIONLESS
    return Spectrum(a.grid, a.values * b.values, result_role)


def scale(s: Spectrum, factor: float, result_role: UnitRole | None = None) -> Spectrum:
    """Scale by a non-negative constant."""
    if factor < 0:
        raise ValueError("scale factor must be non-negative")
    return Spectrum(s.grid, s.values * float(factor), result_role or s.unit_role)


def combine(a: Spectrum, b, op: str = "multiply", result_role: UnitRole | None = None) -> Spectrum:
    """Pointwise combination: `op` is "multiply" (b: Spectrum) or "scale" (b: constant)."""
    if op == "multiply":
        return multiply(a, b, result_role)
    if op == "scale":
        return scale(a, float(b), result_role)
    raise ValueError(f"unknown combine op {op!r}")
