"""Viewport refraction and the lens radiometric transfer.

A flat port behind water stretches the effective focal length by net the
water index (1.33), shrinking the field of view and raising the working
aperture number by the same factor. A centered dome preserves the field of
view but images distant objects onto a nearby virtual surface the lens must
focus on; that distance comes from paraxial refraction through the two
concentric spherical surfaces of the dome shell.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import Spectrum, UnitRole, resample

WATER_INDEX_DEFAULT = 1.33


@dataclass(frozen=True)
class Lens:
    """Camera lens in air: focal length [mm], aperture number, transmission."""

    focal_length_air: float                   # mm
    aperture_number: float                    # N, as set on the lens
    transmission: float | Spectrum = 1.0      # constant fraction or spectrum in [0,1]
    min_aperture: float = 0.7
    max_aperture: float = 64.0

    def __post_init__(self):
        if self.focal_length_air <= 0:
            raise ValueError("focal_length_air must be positive")
        if self.aperture_number <= 0:
            raise ValueError("aperture_number must be positive")
        if isinstance(self.transmission, Spectrum):
            if np.any(self.transmission.values > 1.0):
                raise ValueError("transmission must not exceed 1")
        elif not (0.0 <= self.transmission <= 1.0):
            raise ValueError("transmission must lie in [0, 1]")


@dataclass(frozen=True)
class Viewport:
    """Housing port: flat window or concentric dome shell."""

    kind: str                                  # "flat" | "dome"
    inner_radius: float | None = None          # mm, dome only
    outer_radius: float | None = None          # mm, dome only
    glass_index: float | None = None           # dome only
    water_index: float = WATER_INDEX_DEFAULT
    air_index: float = 1.0

    def __post_init__(self):
        if self.kind not in ("flat", "dome"):
            raise ValueError(f"viewport kind must be 'flat' or 'dome', got {self.kind!r}")
        if self.water_index < 1.0:
            raise ValueError("water_index must be >= 1")
        if self.kind == "dome":
            if self.inner_radius is None or self.outer_radius is None or self.glass_index is None:
                raise ValueError("dome viewport needs inner_radius, outer_radius, glass_index")
            if not (self.outer_radius > self.inner_radius > 0):
                raise ValueError("dome radii must satisfy outer > inner > 0")
            if self.glass_index <= 1.0:
                raise ValueError("glass_index must exceed 1")


@dataclass(frozen=True)
class EffectiveOptics:
    """Lens-plus-port system as the rest of the pipeline sees it."""

    focal_length_effective: float      # mm
    aperture_number_effective: float
    fov_scale: float                   # spatial FOV divisor vs. in-air (flat: water index)
    angular_fov_x: float               # rad
    angular_fov_y: float               # rad
    focus_distance_required: float | None  # m; dome virtual-image distance, None for flat


def effective_focal_length(lens: Lens, vp: Viewport) -> float:
    """Flat port: f_uw = n_water * f_air. Centered dome: unchanged."""
    if vp.kind == "flat":
        return vp.water_index * lens.focal_length_air
    return lens.focal_length_air


def effective_aperture_number(lens: Lens, vp: Viewport) -> float:
    """Aperture number of the in-water system (entrance pupil is unchanged,
    so N scales with the effective focal length)."""
    if vp.kind == "flat":
        return vp.water_index * lens.aperture_number
    return lens.aperture_number


def port_fov_scale(vp: Viewport) -> float:
    """Factor by which the port shrinks the spatial field of view."""
    return vp.water_index if vp.kind == "flat" else 1.0


def dome_virtual_image(vp: Viewport) -> float:
    """Distance [m] in front of the outer dome surface of the virtual image
    of an object at infinity in water.

    Paraxial vergence through the two concentric surfaces (light travels
    water -> glass -> air; both centers of curvature lie on the camera side,
    so both radii are positive in the propagation direction). The negative
    power of the immersed shell pulls infinity to a finite virtual distance;
    in air there is no water refraction and focus stays at infinity.
    """
    if vp.kind != "dome":
        raise ValueError("dome_virtual_image requires a dome viewport")
    n_w = vp.water_index
    n_g = vp.glass_index
    n_a = vp.air_index
    r_o = vp.outer_radius
    r_i = vp.inner_radius
    if n_w == n_a:
        return math.inf

    # Outer surface, object at infinity: n_g/v1 = (n_g - n_w)/r_o
    v1 = n_g * r_o / (n_g - n_w)
    t = r_o - r_i
    u2 = v1 - t
    if u2 == 0.0:
        return math.inf
    # Inner surface: n_a/v2 - n_g/u2 = (n_a - n_g)/r_i
    inv_v2 = (n_a - n_g) / r_i + n_g / u2
    if inv_v2 == 0.0:
        return math.inf
    v2 = n_a / inv_v2
    image_z = v2 + t  # relative to the outer vertex, positive toward the camera
    if image_z >= 0:
        return math.inf
    return -image_z / 1000.0  # mm -> m


def lens_irradiance(radiance: Spectrum, lens: Lens, vp: Viewport, alpha: float) -> Spectrum:
    """Sensor-plane irradiance: E_I = L * (pi/4) * (1/N_eff^2) * cos^4(alpha) * T(lambda).

    `alpha` is the field angle between the principal ray and the pixel ray;
    cos^4 is the natural vignetting falloff.
    """
    n_eff = effective_aperture_number(lens, vp)
    factor = (math.pi / 4.0) / (n_eff * n_eff) * math.cos(alpha) ** 4
    if isinstance(lens.transmission, Spectrum):
        t = resample(lens.transmission, radiance.grid).values
    else:
        t = lens.transmission
    return Spectrum(radiance.grid, radiance.values * factor * t, UnitRole.IRRADIANCE)


def angular_fov(sensor_size_mm: tuple[float, float], f_eff: float) -> tuple[float, float]:
    """Full angular field of view [rad] for each sensor dimension."""
    if f_eff <= 0:
        raise ValueError("effective focal length must be positive")
    ssx, ssy = sensor_size_mm
    return (2.0 * math.atan(ssx / (2.0 * f_eff)),
            2.0 * math.atan(ssy / (2.0 * f_eff)))


def mean_cos4_over_frame(sensor_size_mm: tuple[float, float], f_eff: float,
                         lattice: int = 9) -> float:
    """Frame-averaged natural vignetting factor.

    cos^4(alpha) sampled on a lattice x lattice grid of pixel positions
    across the sensor; the mean scales the center-pixel response to the
    frame-average response.
    """
    ssx, ssy = sensor_size_mm
    xs = np.linspace(-ssx / 2.0, ssx / 2.0, lattice)
    ys = np.linspace(-ssy / 2.0, ssy / 2.0, lattice)
    xx, yy = np.meshgrid(xs, ys)
    alpha = np.arctan(np.hypot(xx, yy) / f_eff)
    return float(np.mean(np.cos(alpha) ** 4))


def effective_optics(lens: Lens, vp: Viewport, sensor_size_mm: tuple[float, float]) -> EffectiveOptics:
    f_eff = effective_focal_length(lens, vp)
    fov_x, fov_y = angular_fov(sensor_size_mm, f_eff)
    focus = dome_virtual_image(vp) if vp.kind == "dome" else None
    if focus is not None and math.isinf(focus):
        focus = None
    return EffectiveOptics(
        focal_length_effective=f_eff,
        aperture_number_effective=effective_aperture_number(lens, vp),
        fov_scale=port_fov_scale(vp),
        angular_fov_x=fov_x,
        angular_fov_y=fov_y,
        focus_distance_required=focus,
    )
