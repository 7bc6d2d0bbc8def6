"""Scenario documents: parsing, validation, and the served form schema.

A scenario is one human-readable document (YAML or JSON) with nested keys
for light, water, surface, geometry, viewport, lens, sensor, exposure, and
mission. Presets are resolved against the catalog; custom curves may be
referenced as CSV paths relative to the document. Validation collects
field-addressed diagnostics instead of failing fast.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import yaml

from .errors import Diagnostic, ValidationError, has_errors
from .mission import ORIENTATIONS, MissionRequirements
from .optics import Lens, Viewport
from .presets import Catalog, SensorProfile, SpectralProfile, validate_profile
from .propagation import LightSource, SceneGeometry, SurfaceMaterial, WaterProfile, solve_geometry
from .sensor import SensorModel
from .spectral import DEFAULT_GRID, Spectrum, integrate, resample, scale

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ExposurePlan:
    """Either a fixed exposure or an auto target the engine solves for."""

    mode: str                        # "manual" | "auto"
    gain_db: float = 0.0
    exposure_time: float | None = None   # s, manual mode
    target_dn: float | None = None       # auto mode; None -> half full scale


@dataclass(frozen=True)
class Scenario:
    light: LightSource
    water: WaterProfile
    surface: SurfaceMaterial
    geometry: SceneGeometry          # with derived paths filled
    viewport: Viewport
    lens: Lens
    sensor: SensorModel
    exposure: ExposurePlan
    mission: MissionRequirements
    document: dict                   # normalized source document

    @property
    def effective_target_dn(self) -> float:
        if self.exposure.target_dn is not None:
            return self.exposure.target_dn
        return float(1 << (self.sensor.bit_depth - 1))

    @property
    def circle_of_confusion_mm(self) -> float:
        if self.mission.circle_of_confusion is not None:
            return self.mission.circle_of_confusion
        return 2.0 * self.sensor.pixel_pitch_mm


class _Reader:
    """Pulls typed values out of a nested document, collecting diagnostics."""

    def __init__(self, doc: dict, diags: list[Diagnostic]):
        self.doc = doc
        self.diags = diags

    def group(self, name: str) -> dict | None:
        value = self.doc.get(name)
        if value is None:
            self.diags.append(Diagnostic("error", "missing-field",
                                         f"scenario section '{name}' is required", source=name))
            return None
        if not isinstance(value, dict):
            self.diags.append(Diagnostic("error", "bad-field",
                                         f"section '{name}' must be a mapping", source=name))
            return None
        return value

    def number(self, group: dict, group_name: str, key: str, *, required=True,
               default=None, minimum=None, maximum=None,
               exclusive_min=False) -> float | None:
        path = f"{group_name}.{key}"
        if key not in group:
            if required:
                self.diags.append(Diagnostic("error", "missing-field",
                                             f"'{path}' is required", source=path))
            return default
        value = group[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.diags.append(Diagnostic("error", "bad-field",
                                         f"'{path}' must be a number", source=path))
            return default
        value = float(value)
        if minimum is not None and (value <= minimum if exclusive_min else value < minimum):
            cmp = ">" if exclusive_min else ">="
            self.diags.append(Diagnostic("error", "out-of-range",
                                         f"'{path}' must be {cmp} {minimum:g}, got {value:g}",
                                         source=path))
            return default
        if maximum is not None and value > maximum:
            self.diags.append(Diagnostic("error", "out-of-range",
                                         f"'{path}' must be <= {maximum:g}, got {value:g}",
                                         source=path))
            return default
        return value

    def string(self, group: dict, group_name: str, key: str, *, required=True,
               default=None, options=None) -> str | None:
        path = f"{group_name}.{key}"
        if key not in group:
            if required:
                self.diags.append(Diagnostic("error", "missing-field",
                                             f"'{path}' is required", source=path))
            return default
        value = group[key]
        if not isinstance(value, str):
            self.diags.append(Diagnostic("error", "bad-field",
                                         f"'{path}' must be a string", source=path))
            return default
        if options is not None and value not in options:
            self.diags.append(Diagnostic("error", "bad-field",
                                         f"'{path}' must be one of {sorted(options)}, got {value!r}",
                                         source=path))
            return default
        return value


def _load_csv_spectrum(kind: str, ref: str, base_dir: Path | None,
                       diags: list[Diagnostic], path_label: str) -> SpectralProfile | None:
    csv_path = Path(ref)
    if base_dir is not None and not csv_path.is_absolute():
        csv_path = base_dir / csv_path
    if not csv_path.is_file():
        diags.append(Diagnostic("error", "missing-file",
                                f"referenced file {ref!r} not found", source=path_label))
        return None
    payload, file_diags = validate_profile(kind, csv_path.read_text(encoding="utf-8"),
                                           source=str(csv_path))
    diags.extend(file_diags)
    return payload


def _resolve_spectral(kind: str, group: dict, group_name: str, catalog: Catalog,
                      base_dir: Path | None, diags: list[Diagnostic],
                      csv_key: str) -> SpectralProfile | None:
    preset = group.get("preset")
    if preset is not None:
        entry = catalog.get(kind, str(preset))
        if entry is None:
            diags.append(Diagnostic("error", "unknown-preset",
                                    f"no {kind} preset named {preset!r} "
                                    f"(available: {', '.join(catalog.names(kind)) or 'none'})",
                                    source=f"{group_name}.preset"))
            return None
        return entry.payload
    if csv_key in group:
        payload = _load_csv_spectrum(kind, str(group[csv_key]), base_dir, diags,
                                     f"{group_name}.{csv_key}")
        return payload
    return None


def scenario_from_document(doc: dict, catalog: Catalog,
                           base_dir: str | Path | None = None) -> Scenario:
    """Build a validated Scenario; raises ValidationError with diagnostics."""
    diags: list[Diagnostic] = []
    if not isinstance(doc, dict):
        raise ValidationError([Diagnostic("error", "bad-document",
                                          "scenario must be a mapping")])
    base = Path(base_dir) if base_dir is not None else None
    version = doc.get("schema_version")
    if version is not None and version != SCHEMA_VERSION:
        diags.append(Diagnostic("error", "schema-version-mismatch",
                                f"schema_version {version!r} is not supported "
                                f"(expected {SCHEMA_VERSION})", source="schema_version"))
    r = _Reader(doc, diags)

    light = water = surface = geometry = viewport = lens = sensor_model = None
    exposure = mission_req = None

    g = r.group("light")
    if g is not None:
        flux = r.number(g, "light", "luminous_flux_lm", minimum=0.0, exclusive_min=True)
        beam_deg = r.number(g, "light", "beam_half_angle_deg", minimum=1.0, maximum=90.0)
        profile = _resolve_spectral("light", g, "light", catalog, base, diags, "spectrum_csv")
        if profile is None and not has_errors(diags):
            diags.append(Diagnostic("error", "missing-field",
                                    "'light' needs a 'preset' or a 'spectrum_csv'",
                                    source="light"))
        if profile is not None and flux is not None and beam_deg is not None:
            shape = resample(profile.spectrum, DEFAULT_GRID)
            total = integrate(shape)
            if total <= 0:
                diags.append(Diagnostic("error", "zero-spectrum",
                                        "light spectrum vanishes on the engine grid",
                                        source="light"))
            else:
                light = LightSource(luminous_flux=flux,
                                    normalized_spectrum=scale(shape, 1.0 / total),
                                    beam_half_angle=math.radians(beam_deg),
                                    preset_kind=profile.preset_kind or "custom")

    g = r.group("water")
    if g is not None:
        profile = _resolve_spectral("water", g, "water", catalog, base, diags, "profile_csv")
        if profile is None and not has_errors([d for d in diags if d.source and d.source.startswith("water")]):
            diags.append(Diagnostic("error", "missing-field",
                                    "'water' needs a 'preset' or a 'profile_csv'", source="water"))
        if profile is not None:
            water = WaterProfile(name=profile.name or "custom", attenuation=profile.spectrum)

    g = r.group("surface")
    if g is not None:
        constant_m = r.number(g, "surface", "constant_reflectance", required=False,
                              minimum=0.0, maximum=1.0)
        profile = _resolve_spectral("material", g, "surface", catalog, base, diags,
                                    "reflectance_csv")
        if profile is not None:
            surface = SurfaceMaterial(name=profile.name or "custom",
                                      reflectance=profile.spectrum)
        elif constant_m is not None:
            from .spectral import constant as constant_spectrum
            surface = SurfaceMaterial(name=f"constant-{constant_m:g}",
                                      reflectance=constant_spectrum(constant_m))
        elif not has_errors([d for d in diags if d.source and d.source.startswith("surface")]):
            diags.append(Diagnostic("error", "missing-field",
                                    "'surface' needs a 'preset', 'reflectance_csv', or "
                                    "'constant_reflectance'", source="surface"))

    g = r.group("geometry")
    if g is not None:
        altitude = r.number(g, "geometry", "camera_altitude_m", minimum=0.0, exclusive_min=True)
        offset = r.number(g, "geometry", "light_offset_m", required=False, default=0.0,
                          minimum=0.0)
        tilt_deg = r.number(g, "geometry", "light_tilt_deg", required=False)
        if altitude is not None and offset is not None:
            geometry = solve_geometry(SceneGeometry(
                camera_altitude=altitude, light_offset=offset,
                light_tilt=math.radians(tilt_deg) if tilt_deg is not None else None))

    g = r.group("viewport")
    if g is not None:
        kind = r.string(g, "viewport", "kind", options=("flat", "dome"))
        water_index = r.number(g, "viewport", "water_index", required=False, default=1.33,
                               minimum=1.0)
        if kind == "dome":
            inner = r.number(g, "viewport", "inner_radius_mm", minimum=0.0, exclusive_min=True)
            outer = r.number(g, "viewport", "outer_radius_mm", minimum=0.0, exclusive_min=True)
            glass = r.number(g, "viewport", "glass_index", minimum=1.0, exclusive_min=True)
            if None not in (inner, outer, glass, water_index):
                if outer <= inner:
                    diags.append(Diagnostic("error", "out-of-range",
                                            "'viewport.outer_radius_mm' must exceed "
                                            "'viewport.inner_radius_mm'",
                                            source="viewport.outer_radius_mm"))
                else:
                    viewport = Viewport(kind="dome", inner_radius=inner, outer_radius=outer,
                                        glass_index=glass, water_index=water_index)
        elif kind == "flat" and water_index is not None:
            viewport = Viewport(kind="flat", water_index=water_index)

    g = r.group("lens")
    if g is not None:
        focal = r.number(g, "lens", "focal_length_mm", minimum=0.0, exclusive_min=True)
        aperture = r.number(g, "lens", "aperture_number", minimum=0.0, exclusive_min=True)
        transmission: float | Spectrum | None = r.number(
            g, "lens", "transmission", required=False, minimum=0.0, maximum=1.0)
        if "transmission_csv" in g or "preset" in g:
            profile = _resolve_spectral("lens", g, "lens", catalog, base, diags,
                                        "transmission_csv")
            if profile is not None:
                transmission = profile.spectrum
        if transmission is None:
            transmission = 1.0
        if focal is not None and aperture is not None:
            lens = Lens(focal_length_air=focal, aperture_number=aperture,
                        transmission=transmission)

    g = r.group("sensor")
    if g is not None:
        preset = r.string(g, "sensor", "preset")
        snr_den = r.string(g, "sensor", "snr_denominator", required=False,
                           options=("paper", "emva"))
        if preset is not None:
            entry = catalog.get("sensor", preset)
            if entry is None:
                diags.append(Diagnostic("error", "unknown-preset",
                                        f"no sensor preset named {preset!r} (available: "
                                        f"{', '.join(catalog.names('sensor')) or 'none'})",
                                        source="sensor.preset"))
            else:
                profile: SensorProfile = entry.payload
                sensor_model = profile.model
                if snr_den is not None and snr_den != sensor_model.snr_denominator:
                    from dataclasses import replace
                    sensor_model = replace(sensor_model, snr_denominator=snr_den)

    g = r.group("exposure")
    if g is not None:
        mode = r.string(g, "exposure", "mode", options=("manual", "auto"))
        gain_db = r.number(g, "exposure", "gain_db", required=False, default=0.0, minimum=0.0)
        exposure_time = r.number(g, "exposure", "exposure_time_s", required=(mode == "manual"),
                                 minimum=0.0, exclusive_min=True)
        target_dn = r.number(g, "exposure", "target_dn", required=False, minimum=0.0,
                             exclusive_min=True)
        if mode is not None and gain_db is not None:
            exposure = ExposurePlan(mode=mode, gain_db=gain_db,
                                    exposure_time=exposure_time, target_dn=target_dn)
        if sensor_model is not None and target_dn is not None \
                and target_dn > sensor_model.saturation_value:
            diags.append(Diagnostic("error", "out-of-range",
                                    f"'exposure.target_dn' exceeds the sensor's saturation "
                                    f"value {sensor_model.saturation_value}",
                                    source="exposure.target_dn"))

    g = r.group("mission")
    if g is not None:
        speed = r.number(g, "mission", "vehicle_speed_mps", minimum=0.0, exclusive_min=True)
        ovr = r.number(g, "mission", "overlap_fraction", minimum=0.0)
        blur = r.number(g, "mission", "max_blur_pixels", minimum=0.0)
        min_dof = r.number(g, "mission", "min_dof_m", minimum=0.0)
        focus = r.number(g, "mission", "focus_distance_m", minimum=0.0, exclusive_min=True)
        coc = r.number(g, "mission", "circle_of_confusion_mm", required=False,
                       minimum=0.0, exclusive_min=True)
        orientation = r.string(g, "mission", "camera_orientation", required=False,
                               default="x-along-track", options=ORIENTATIONS)
        if ovr is not None and ovr >= 1:
            diags.append(Diagnostic("error", "out-of-range",
                                    f"'mission.overlap_fraction' must be < 1, got {ovr:g}",
                                    source="mission.overlap_fraction"))
        elif None not in (speed, ovr, blur, min_dof, focus) and orientation is not None:
            mission_req = MissionRequirements(
                vehicle_speed=speed, overlap_fraction=ovr, max_blur_pixels=blur,
                min_dof=min_dof, focus_distance=focus, circle_of_confusion=coc,
                camera_orientation=orientation)

    if has_errors(diags) or None in (light, water, surface, geometry, viewport, lens,
                                     sensor_model, exposure, mission_req):
        if not has_errors(diags):
            diags.append(Diagnostic("error", "incomplete-scenario",
                                    "scenario could not be assembled"))
        raise ValidationError(diags)

    return Scenario(light=light, water=water, surface=surface, geometry=geometry,
                    viewport=viewport, lens=lens, sensor=sensor_model, exposure=exposure,
                    mission=mission_req, document=doc)


def load_scenario_file(path: str | Path, catalog: Catalog) -> Scenario:
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ValidationError([Diagnostic("error", "bad-document",
                                          f"cannot parse {path}: {exc}", source=str(path))])
    return scenario_from_document(doc, catalog, base_dir=path.parent)


def get_document_value(doc: dict, dotted_path: str):
    node = doc
    for part in dotted_path.split("."):
        if not isinstance(node, dict) or part not in node:
            raise KeyError(dotted_path)
        node = node[part]
    return node


def set_document_value(doc: dict, dotted_path: str, value) -> None:
    parts = dotted_path.split(".")
    node = doc
    for part in parts[:-1]:
        if not isinstance(node.get(part), dict):
            raise KeyError(dotted_path)
        node = node[part]
    if parts[-1] not in node:
        raise KeyError(dotted_path)
    node[parts[-1]] = value


def scenario_schema(catalog: Catalog) -> dict:
    """Machine-readable description of the scenario document, for form
    generation and client-side validation."""

    def num(path, label, unit=None, minimum=None, maximum=None, required=True,
            exclusive_min=False, default=None, sweepable=True):
        f = {"path": path, "label": label, "type": "number", "required": required,
             "sweepable": sweepable}
        if unit:
            f["unit"] = unit
        if minimum is not None:
            f["min"] = minimum
            f["exclusive_min"] = exclusive_min
        if maximum is not None:
            f["max"] = maximum
        if default is not None:
            f["default"] = default
        return f

    def preset(path, label, kind):
        return {"path": path, "label": label, "type": "preset", "preset_kind": kind,
                "options": catalog.names(kind), "required": True, "sweepable": False}

    def enum(path, label, options, required=True, default=None):
        f = {"path": path, "label": label, "type": "enum", "options": list(options),
             "required": required, "sweepable": False}
        if default is not None:
            f["default"] = default
        return f

    groups = [
        {"name": "light", "label": "Light", "fields": [
            preset("light.preset", "Light preset", "light"),
            num("light.luminous_flux_lm", "Luminous flux", "lm", 0, exclusive_min=True),
            num("light.beam_half_angle_deg", "Beam half-angle", "deg", 1, 90),
        ]},
        {"name": "water", "label": "Water", "fields": [
            preset("water.preset", "Water profile", "water"),
        ]},
        {"name": "surface", "label": "Surface", "fields": [
            preset("surface.preset", "Surface material", "material"),
        ]},
        {"name": "geometry", "label": "Geometry", "fields": [
            num("geometry.camera_altitude_m", "Camera altitude", "m", 0, exclusive_min=True),
            num("geometry.light_offset_m", "Light offset", "m", 0, required=False, default=0.0),
        ]},
        {"name": "viewport", "label": "Viewport", "fields": [
            enum("viewport.kind", "Port kind", ("flat", "dome")),
            num("viewport.water_index", "Water index", None, 1.0, required=False, default=1.33),
            num("viewport.inner_radius_mm", "Dome inner radius", "mm", 0, required=False,
                exclusive_min=True),
            num("viewport.outer_radius_mm", "Dome outer radius", "mm", 0, required=False,
                exclusive_min=True),
            num("viewport.glass_index", "Dome glass index", None, 1.0, required=False,
                exclusive_min=True),
        ]},
        {"name": "lens", "label": "Lens", "fields": [
            num("lens.focal_length_mm", "Focal length (air)", "mm", 0, exclusive_min=True),
            num("lens.aperture_number", "Aperture number", None, 0, exclusive_min=True),
            num("lens.transmission", "Transmission", None, 0, 1, required=False, default=1.0),
        ]},
        {"name": "sensor", "label": "Sensor", "fields": [
            preset("sensor.preset", "Sensor preset", "sensor"),
        ]},
        {"name": "exposure", "label": "Exposure", "fields": [
            enum("exposure.mode", "Mode", ("auto", "manual"), default="auto"),
            num("exposure.target_dn", "Auto target", "DN", 0, required=False,
                exclusive_min=True),
            num("exposure.exposure_time_s", "Exposure time", "s", 0, required=False,
                exclusive_min=True),
            num("exposure.gain_db", "Gain", "dB", 0, required=False, default=0.0),
        ]},
        {"name": "mission", "label": "Mission", "fields": [
            num("mission.vehicle_speed_mps", "Vehicle speed", "m/s", 0, exclusive_min=True),
            num("mission.overlap_fraction", "Image overlap", None, 0, 0.999),
            num("mission.max_blur_pixels", "Blur budget", "px", 0),
            num("mission.min_dof_m", "Minimum DoF", "m", 0),
            num("mission.focus_distance_m", "Focus distance", "m", 0, exclusive_min=True),
            num("mission.circle_of_confusion_mm", "Circle of confusion", "mm", 0,
                required=False, exclusive_min=True),
            enum("mission.camera_orientation", "Orientation", ORIENTATIONS,
                 required=False, default="x-along-track"),
        ]},
    ]
    from .engine import METRICS  # late import; engine imports this module
    return {
        "schema_version": SCHEMA_VERSION,
        "groups": groups,
        "metrics": sorted(METRICS),
        "stage_names": ["source", "at-target", "after-reflection", "at-lens", "at-sensor"],
    }
