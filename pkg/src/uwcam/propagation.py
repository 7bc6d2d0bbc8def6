"""Light emission, underwater attenuation, and seafloor reflection.

Covers the first stages of the image-formation chain: a lumen-rated conical
source, inverse-square spreading, exponential spectral attenuation along the
water path, and diffuse (Lambertian) reflection off the target surface.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .photopic import LUMENS_PER_WATT_AT_PEAK, photopic_curve
from .spectral import Spectrum, UnitRole, integrate, resample

# Narrower beams than 1 degree drive the point-source irradiance to infinity;
# real strobes are far wider.
MIN_BEAM_HALF_ANGLE = math.radians(1.0)


@dataclass(frozen=True)
class LightSource:
    """Artificial source: lumen output, normalized spectral shape, cone half-angle."""

    luminous_flux: float            # lm
    normalized_spectrum: Spectrum   # dimensionless, unit integral over nm
    beam_half_angle: float          # rad, in (0, pi/2]
    preset_kind: str = "custom"     # led | fluorescent | sunlight | custom

    def __post_init__(self):
        if self.luminous_flux <= 0:
            raise ValueError("luminous_flux must be positive")
        if not (MIN_BEAM_HALF_ANGLE <= self.beam_half_angle <= math.pi / 2):
            raise ValueError("beam_half_angle must be between 1 degree and 90 degrees")
        total = integrate(self.normalized_spectrum)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"normalized_spectrum must integrate to 1 (got {total:g}); "
                             "renormalize on load")


@dataclass(frozen=True)
class WaterProfile:
    """Named wavelength-dependent attenuation coefficients b(lambda) [1/m]."""

    name: str
    attenuation: Spectrum  # dimensionless role carries 1/m values; >= 0 enforced by Spectrum


@dataclass(frozen=True)
class SurfaceMaterial:
    """Diffuse reflector with reflection coefficient M(lambda) in [0, 1]."""

    name: str
    reflectance: Spectrum

    def __post_init__(self):
        if np.any(self.reflectance.values > 1.0):
            raise ValueError("reflectance must not exceed 1")


@dataclass(frozen=True)
class SceneGeometry:
    """Camera/light layout over a flat target directly below the camera.

    `light_tilt` records the beam axis angle from vertical when a rig fixes
    it; the propagation model aims the beam at the target center regardless,
    so it is informational. Derived path lengths and the incident angle are
    filled by solve_geometry.
    """

    camera_altitude: float          # m, camera to target (D)
    light_offset: float = 0.0       # m, lateral light-to-camera baseline
    light_tilt: float | None = None  # rad from vertical; None = aimed at target
    light_path: float | None = None      # d1: light to target
    return_path: float | None = None     # d2: target to camera
    incident_angle: float | None = None  # theta_i at the target

    def __post_init__(self):
        if self.camera_altitude <= 0:
            raise ValueError("camera_altitude must be positive")
        if self.light_offset < 0:
            raise ValueError("light_offset must be non-negative")
        if self.incident_angle is not None and not (0 <= self.incident_angle < math.pi / 2):
            raise ValueError("incident_angle must lie in [0, pi/2)")


def solve_geometry(g: SceneGeometry) -> SceneGeometry:
    """Fill d1, d2, theta_i by right-triangle construction.

    The camera looks straight down at the target center (d2 = altitude); the
    light sits `light_offset` aside at the same height, so d1 is the
    hypotenuse and the beam strikes the target at atan(offset/altitude).
    """
    d1 = math.hypot(g.camera_altitude, g.light_offset)
    return replace(g,
                   light_path=d1,
                   return_path=g.camera_altitude,
                   incident_angle=math.atan2(g.light_offset, g.camera_altitude))


def radiant_spectrum(light: LightSource) -> Spectrum:
    """Radiant flux spectrum [W/nm] recovering the source's lumen rating.

    Lumens weight radiant power by the photopic curve at 683 lm/W, so the
    normalized shape S is scaled by F_lum / (683 * integral(S*V)).
    """
    s = light.normalized_spectrum
    v = resample(photopic_curve(), s.grid)
    lumen_weight = float(np.trapezoid(s.values * v.values, s.grid.points))
    if lumen_weight <= 0.0:
        raise ValueError("light spectrum lies entirely outside the photopic band; "
                         "lumen rating cannot be converted to watts")
    watts_total = light.luminous_flux / (LUMENS_PER_WATT_AT_PEAK * lumen_weight)
    return Spectrum(s.grid, s.values * watts_total, UnitRole.RADIANT_FLUX)


def solid_angle(beam_half_angle: float) -> float:
    """Solid angle [sr] of a cone with the given half-angle."""
    return 2.0 * math.pi * (1.0 - math.cos(beam_half_angle))


def irradiance_at_distance(light: LightSource, d: float) -> Spectrum:
    """Irradiance spectrum [W/(m^2 nm)] on a target at distance d inside the beam.

    Point source spreading uniformly into its cone: E = Phi / (Omega d^2).
    The target is assumed at beam center; edge falloff is not modeled.
    """
    if d <= 0:
        raise ValueError("distance must be positive")
    phi = radiant_spectrum(light)
    denom = solid_angle(light.beam_half_angle) * d * d
    return Spectrum(phi.grid, phi.values / denom, UnitRole.IRRADIANCE)


def attenuate(s: Spectrum, water: WaterProfile, d: float) -> Spectrum:
    """Exponential decay over path length d [m]: s(l) * exp(-b(l) d)."""
    if d < 0:
        raise ValueError("path length must be non-negative")
    b = resample(water.attenuation, s.grid)
    return s.with_values(s.values * np.exp(-b.values * d))


def reflect(e: Spectrum, m: SurfaceMaterial, theta_i: float) -> Spectrum:
    """Diffuse reflection: radiance L = E * M(lambda)/pi * cos(theta_i)."""
    if not (0 <= theta_i <= math.pi / 2):
        raise ValueError("incident angle must lie in [0, pi/2]")
    refl = resample(m.reflectance, e.grid)
    vals = e.values * refl.values / math.pi * math.cos(theta_i)
    return Spectrum(e.grid, vals, UnitRole.RADIANCE)
