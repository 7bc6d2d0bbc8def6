"""Operational constraint calculators for survey missions.

Frame rate from overlap, depth of field from the circle of confusion,
exposure ceiling from motion blur, and spatial footprint from the lens.
Depth-of-field arithmetic stays in millimeters (photographic convention;
f^4 in meters invites underflow), with meter conversions at the boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfeasibleError

APERTURE_SEARCH_MIN = 0.7
APERTURE_SEARCH_MAX = 64.0
APERTURE_TOLERANCE = 1e-4

ORIENTATIONS = ("x-along-track", "y-along-track")


@dataclass(frozen=True)
class MissionRequirements:
    vehicle_speed: float             # m/s
    overlap_fraction: float          # OVR in [0, 1)
    max_blur_pixels: float           # PIX_blur
    min_dof: float                   # m
    focus_distance: float            # m
    circle_of_confusion: float | None = None  # mm; None -> 2x pixel pitch
    camera_orientation: str = "x-along-track"

    def __post_init__(self):
        if self.vehicle_speed <= 0:
            raise ValueError("vehicle_speed must be positive")
        if not (0 <= self.overlap_fraction < 1):
            raise ValueError("overlap_fraction must lie in [0, 1)")
        if self.max_blur_pixels < 0:
            raise ValueError("max_blur_pixels must be non-negative")
        if self.min_dof < 0:
            raise ValueError("min_dof must be non-negative")
        if self.focus_distance <= 0:
            raise ValueError("focus_distance must be positive")
        if self.circle_of_confusion is not None and self.circle_of_confusion <= 0:
            raise ValueError("circle_of_confusion must be positive")
        if self.camera_orientation not in ORIENTATIONS:
            raise ValueError(f"camera_orientation must be one of {ORIENTATIONS}")


@dataclass(frozen=True)
class ConstraintReport:
    acquisition_rate: float          # Hz
    max_exposure_time: float         # s, blur-limited
    dof: float                       # m, may be +inf
    fov_x: float                     # m
    fov_y: float                     # m
    min_aperture_for_dof: float | None  # None when unreachable even at N=64
    required_exposure: float | None  # s to reach the exposure target, None if unreachable
    chosen_exposure: float           # s actually used
    feasible: bool
    violations: tuple[str, ...]      # machine-readable codes


def acquisition_rate(v: float, fov_along_track: float, ovr: float) -> float:
    """Image frequency f = v / (FOV (1 - OVR)) keeping consecutive overlap."""
    if not (0 <= ovr < 1):
        raise ValueError("overlap fraction must lie in [0, 1)")
    if fov_along_track <= 0:
        raise ValueError("field of view must be positive")
    return v / (fov_along_track * (1.0 - ovr))


def depth_of_field(n_eff: float, coc_mm: float, f_eff_mm: float, s_mm: float) -> float:
    """DoF = 2 N c f^2 s^2 / (f^4 - N^2 c^2 s^2) [mm]; +inf at/past hyperfocal."""
    if min(n_eff, coc_mm, f_eff_mm, s_mm) <= 0:
        raise ValueError("all depth-of-field inputs must be positive")
    f2 = f_eff_mm * f_eff_mm
    ncs = n_eff * coc_mm * s_mm
    denominator = f2 * f2 - ncs * ncs
    if denominator <= 0:
        return math.inf
    return 2.0 * n_eff * coc_mm * f2 * s_mm * s_mm / denominator


def max_exposure_for_blur(pix: float, fov_along_track: float, v: float, res_along_track: int) -> float:
    """Longest exposure keeping motion blur under `pix` pixels."""
    if v <= 0:
        raise ValueError("vehicle speed must be positive")
    if res_along_track <= 0:
        raise ValueError("resolution must be positive")
    if pix < 0:
        raise ValueError("blur budget must be non-negative")
    return pix * fov_along_track / (v * res_along_track)


def spatial_fov(distance_m: float, sensor_size_mm: float, f_mm: float) -> float:
    """Footprint on the target plane: FOV = D * SS / f [m]."""
    if distance_m < 0:
        raise ValueError("distance must be non-negative")
    if sensor_size_mm <= 0 or f_mm <= 0:
        raise ValueError("sensor size and focal length must be positive")
    return distance_m * sensor_size_mm / f_mm


def min_aperture_for_dof(target_dof_mm: float, coc_mm: float, f_eff_mm: float,
                         s_mm: float) -> float:
    """Smallest aperture number achieving at least `target_dof_mm`.

    DoF grows monotonically with N up to the hyperfocal transition (where it
    becomes infinite), so bisection on [0.7, 64] finds the threshold. Returns
    0.7 when any aperture suffices; raises InfeasibleError when even N=64
    falls short.
    """
    if target_dof_mm <= 0:
        raise ValueError("target depth of field must be positive")

    def meets(n: float) -> bool:
        return depth_of_field(n, coc_mm, f_eff_mm, s_mm) >= target_dof_mm

    lo, hi = APERTURE_SEARCH_MIN, APERTURE_SEARCH_MAX
    if meets(lo):
        return lo
    if not meets(hi):
        raise InfeasibleError(
            "dof-unreachable",
            f"depth of field {target_dof_mm:g} mm is unreachable even at N={hi:g}")
    while hi - lo > APERTURE_TOLERANCE:
        mid = 0.5 * (lo + hi)
        if meets(mid):
            hi = mid
        else:
            lo = mid
    return hi
