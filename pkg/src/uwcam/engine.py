"""Pipeline composition: scenario evaluation, feasibility, parameter sweeps.

evaluate() chains source emission, beam spreading, two attenuation legs,
diffuse reflection, the lens transfer, and the sensor response, recording
the spectrum after each stage. Everything is pure, so identical scenarios
produce bit-identical reports and sweep cells can run in any order.
"""
from __future__ import annotations

import copy
import math
from dataclasses import dataclass

from .errors import InfeasibleError, StageError, ValidationError
from .mission import (ConstraintReport, acquisition_rate, depth_of_field,
                      max_exposure_for_blur, min_aperture_for_dof, spatial_fov)
from .optics import (effective_aperture_number, effective_focal_length,
                     effective_optics, lens_irradiance, mean_cos4_over_frame,
                     port_fov_scale)
from .presets import Catalog
from .propagation import (attenuate, irradiance_at_distance, radiant_spectrum,
                          reflect, solve_geometry)
from .scenario import (SCHEMA_VERSION, Scenario, get_document_value,
                       scenario_from_document, set_document_value)
from .sensor import ResponseResult, digitize, required_exposure, respond
from .spectral import Spectrum

STAGE_NAMES = ("source", "at-target", "after-reflection", "at-lens", "at-sensor")
STAGE_UNITS = ("W/nm", "W/(m^2 nm)", "W/(m^2 sr nm)", "W/(m^2 sr nm)", "W/(m^2 nm)")

VIOLATION_UNDEREXPOSED = "underexposed-at-blur-limit"
VIOLATION_SATURATED = "saturated"
VIOLATION_BLUR_EXCEEDED = "motion-blur-exceeded"
VIOLATION_DOF_BELOW_MIN = "dof-below-minimum"
VIOLATION_DOF_UNREACHABLE = "dof-unreachable"


@dataclass(frozen=True)
class DerivedSettings:
    exposure_time: float             # s actually applied
    required_exposure: float | None  # s to hit the target; None when unreachable
    exposure_capped_by_blur: bool
    auto_exposure: bool
    target_dn: float
    gain_db: float
    aperture_number_effective: float
    focal_length_effective: float    # mm
    focus_distance_required: float | None  # m, dome ports


@dataclass(frozen=True)
class EvaluationReport:
    response: ResponseResult
    frame_average_dn: float
    mean_cos4: float
    constraints: ConstraintReport
    derived: DerivedSettings
    stage_spectra: tuple[tuple[str, Spectrum], ...]


def _stage(name: str):
    """Decorator-ish guard: re-raise stage failures with attribution."""
    class _Ctx:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if exc is not None and not isinstance(exc, (StageError, InfeasibleError)):
                raise StageError(name, exc) from exc
            return False
    return _Ctx()


def evaluate(sc: Scenario) -> EvaluationReport:
    geom = sc.geometry
    if geom.light_path is None or geom.return_path is None or geom.incident_angle is None:
        geom = solve_geometry(geom)
    d1, d2, theta = geom.light_path, geom.return_path, geom.incident_angle

    with _stage("source"):
        source = radiant_spectrum(sc.light)
    with _stage("at-target"):
        at_target = attenuate(irradiance_at_distance(sc.light, d1), sc.water, d1)
    with _stage("after-reflection"):
        after_reflection = reflect(at_target, sc.surface, theta)
    with _stage("at-lens"):
        at_lens = attenuate(after_reflection, sc.water, d2)
    with _stage("at-sensor"):
        at_sensor = lens_irradiance(at_lens, sc.lens, sc.viewport, 0.0)

    with _stage("constraints"):
        eo = effective_optics(sc.lens, sc.viewport,
                              (sc.sensor.sensor_size_x, sc.sensor.sensor_size_y))
        shrink = port_fov_scale(sc.viewport)
        distance = geom.camera_altitude
        fov_x = spatial_fov(distance, sc.sensor.sensor_size_x, sc.lens.focal_length_air) / shrink
        fov_y = spatial_fov(distance, sc.sensor.sensor_size_y, sc.lens.focal_length_air) / shrink
        along_x = sc.mission.camera_orientation == "x-along-track"
        fov_track = fov_x if along_x else fov_y
        res_track = sc.sensor.resolution_x if along_x else sc.sensor.resolution_y

        rate = acquisition_rate(sc.mission.vehicle_speed, fov_track,
                                sc.mission.overlap_fraction)
        blur_cap = max_exposure_for_blur(sc.mission.max_blur_pixels, fov_track,
                                         sc.mission.vehicle_speed, res_track)
        coc = sc.circle_of_confusion_mm
        n_eff = eo.aperture_number_effective
        focus_mm = sc.mission.focus_distance * 1000.0
        dof_mm = depth_of_field(n_eff, coc, eo.focal_length_effective, focus_mm)
        dof_m = dof_mm / 1000.0 if math.isfinite(dof_mm) else math.inf

        min_n: float | None
        try:
            min_n = min_aperture_for_dof(sc.mission.min_dof * 1000.0, coc,
                                         eo.focal_length_effective, focus_mm) \
                if sc.mission.min_dof > 0 else None
        except InfeasibleError:
            min_n = None

    with _stage("exposure"):
        target = sc.effective_target_dn
        gain = sc.exposure.gain_db
        try:
            t_required = required_exposure(target, at_sensor, sc.sensor, gain)
        except InfeasibleError:
            t_required = None
        capped = False
        if sc.exposure.mode == "auto":
            if t_required is None:
                t_exp = blur_cap if blur_cap > 0 else 0.0
                capped = True
            elif blur_cap > 0 and t_required > blur_cap:
                t_exp = blur_cap
                capped = True
            elif blur_cap == 0.0 and sc.mission.max_blur_pixels == 0.0:
                # No blur budget at all: nothing can expose.
                t_exp = 0.0
                capped = True
            else:
                t_exp = t_required
        else:
            t_exp = sc.exposure.exposure_time

    with _stage("response"):
        if t_exp > 0:
            response = respond(at_sensor, sc.sensor, t_exp, gain)
        else:
            dn, _ = digitize(0.0, sc.sensor, gain)
            response = ResponseResult(0.0, 0.0, dn, 0.0, -math.inf, False)
        mean_cos4 = mean_cos4_over_frame((sc.sensor.sensor_size_x, sc.sensor.sensor_size_y),
                                         eo.focal_length_effective)
        frame_dn, _ = digitize(response.absorbed_electrons * mean_cos4, sc.sensor, gain)

    violations: list[str] = []
    if sc.exposure.mode == "auto" and capped:
        violations.append(VIOLATION_UNDEREXPOSED)
    if sc.exposure.mode == "manual" and t_exp > blur_cap:
        violations.append(VIOLATION_BLUR_EXCEEDED)
    if response.saturated:
        violations.append(VIOLATION_SATURATED)
    if sc.mission.min_dof > 0 and dof_m < sc.mission.min_dof:
        violations.append(VIOLATION_DOF_BELOW_MIN if min_n is not None
                          else VIOLATION_DOF_UNREACHABLE)

    constraints = ConstraintReport(
        acquisition_rate=rate,
        max_exposure_time=blur_cap,
        dof=dof_m,
        fov_x=fov_x,
        fov_y=fov_y,
        min_aperture_for_dof=min_n,
        required_exposure=t_required,
        chosen_exposure=t_exp,
        feasible=not violations,
        violations=tuple(violations),
    )
    derived = DerivedSettings(
        exposure_time=t_exp,
        required_exposure=t_required,
        exposure_capped_by_blur=capped,
        auto_exposure=sc.exposure.mode == "auto",
        target_dn=target,
        gain_db=gain,
        aperture_number_effective=effective_aperture_number(sc.lens, sc.viewport),
        focal_length_effective=effective_focal_length(sc.lens, sc.viewport),
        focus_distance_required=eo.focus_distance_required,
    )
    stages = ((STAGE_NAMES[0], source), (STAGE_NAMES[1], at_target),
              (STAGE_NAMES[2], after_reflection), (STAGE_NAMES[3], at_lens),
              (STAGE_NAMES[4], at_sensor))
    return EvaluationReport(response=response, frame_average_dn=frame_dn,
                            mean_cos4=mean_cos4, constraints=constraints,
                            derived=derived, stage_spectra=stages)


def feasibility(sc: Scenario) -> ConstraintReport:
    return evaluate(sc).constraints


# ---------------------------------------------------------------------------
# Parameter sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepAxis:
    path: str
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("sweep step must be positive")
        if self.stop < self.start:
            raise ValueError("sweep stop must not precede start")

    def values(self) -> list[float]:
        # Endpoint-inclusive; tolerant of float drift so 1.4:16:0.2 has 74 points.
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(n)]


@dataclass(frozen=True)
class SweepSpec:
    axes: tuple[SweepAxis, ...]
    metrics: tuple[str, ...]

    def __post_init__(self):
        if not (1 <= len(self.axes) <= 2):
            raise ValueError("a sweep takes one or two parameter axes")
        if not self.metrics:
            raise ValueError("a sweep needs at least one output metric")
        for m in self.metrics:
            if m not in METRICS:
                raise ValueError(f"unknown metric {m!r} (available: {', '.join(sorted(METRICS))})")

    def cell_count(self) -> int:
        n = 1
        for axis in self.axes:
            n *= len(axis.values())
        return n


@dataclass(frozen=True)
class SweepResult:
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]


METRICS = {
    "response": lambda r: r.response.digital_value,
    "response_frame_avg": lambda r: r.frame_average_dn,
    "electrons": lambda r: r.response.absorbed_electrons,
    "photons": lambda r: r.response.absorbed_photons,
    "snr": lambda r: r.response.snr,
    "snr_db": lambda r: r.response.snr_db,
    "saturated": lambda r: int(r.response.saturated),
    "dof": lambda r: r.constraints.dof,
    "min_aperture": lambda r: r.constraints.min_aperture_for_dof,
    "acquisition_rate": lambda r: r.constraints.acquisition_rate,
    "max_exposure": lambda r: r.constraints.max_exposure_time,
    "required_exposure": lambda r: r.constraints.required_exposure,
    "exposure": lambda r: r.derived.exposure_time,
    "fov_x": lambda r: r.constraints.fov_x,
    "fov_y": lambda r: r.constraints.fov_y,
    "feasible": lambda r: int(r.constraints.feasible),
}


def sweep(base_document: dict, spec: SweepSpec, catalog: Catalog,
          base_dir=None) -> SweepResult:
    """Evaluate the scenario across a 1-D or 2-D parameter grid.

    Each cell rebuilds the scenario document with the swept values applied,
    so parameter paths address the document schema (e.g.
    ``lens.aperture_number``). Cells that fail carry their error code in
    every metric column instead of aborting the sweep.
    """
    for axis in spec.axes:
        get_document_value(base_document, axis.path)  # raises KeyError if unresolvable

    axis_values = [axis.values() for axis in spec.axes]
    if len(axis_values) == 1:
        cells = [(v,) for v in axis_values[0]]
    else:
        cells = [(a, b) for a in axis_values[0] for b in axis_values[1]]

    rows = []
    for cell in cells:
        doc = copy.deepcopy(base_document)
        for axis, value in zip(spec.axes, cell):
            set_document_value(doc, axis.path, value)
        try:
            report = evaluate(scenario_from_document(doc, catalog, base_dir=base_dir))
            metrics = [METRICS[m](report) for m in spec.metrics]
        except ValidationError as exc:
            code = exc.diagnostics[0].code if exc.diagnostics else "invalid"
            metrics = [f"error:{code}"] * len(spec.metrics)
        except InfeasibleError as exc:
            metrics = [f"error:{exc.code}"] * len(spec.metrics)
        except StageError as exc:
            metrics = [f"error:stage-{exc.stage}"] * len(spec.metrics)
        rows.append(tuple(cell) + tuple(metrics))

    columns = tuple(axis.path for axis in spec.axes) + tuple(spec.metrics)
    return SweepResult(columns=columns, rows=tuple(rows))


# ---------------------------------------------------------------------------
# Report documents (shared verbatim by CLI and service)
# ---------------------------------------------------------------------------

SIGNIFICANT_DIGITS = 9


def round_sig(x):
    """Round to 9 significant digits for reproducible documents."""
    if isinstance(x, bool) or not isinstance(x, float):
        return x
    if not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return float(f"{x:.{SIGNIFICANT_DIGITS}g}")


def _rounded(obj):
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return round_sig(obj)


def report_document(report: EvaluationReport, include_stage_spectra: bool = True) -> dict:
    resp = report.response
    cons = report.constraints
    der = report.derived
    doc = {
        "schema_version": SCHEMA_VERSION,
        "response": {
            "digital_value_dn": resp.digital_value,
            "frame_average_dn": report.frame_average_dn,
            "mean_cos4_factor": report.mean_cos4,
            "absorbed_electrons": resp.absorbed_electrons,
            "absorbed_photons": resp.absorbed_photons,
            "snr": resp.snr,
            "snr_db": resp.snr_db,
            "saturated": resp.saturated,
        },
        "derived_settings": {
            "exposure_time_s": der.exposure_time,
            "required_exposure_s": der.required_exposure,
            "exposure_capped_by_blur": der.exposure_capped_by_blur,
            "auto_exposure": der.auto_exposure,
            "target_dn": der.target_dn,
            "gain_db": der.gain_db,
            "aperture_number_effective": der.aperture_number_effective,
            "focal_length_effective_mm": der.focal_length_effective,
            "focus_distance_required_m": der.focus_distance_required,
        },
        "constraints": {
            "acquisition_rate_hz": cons.acquisition_rate,
            "max_exposure_s": cons.max_exposure_time,
            "dof_m": cons.dof,
            "fov_x_m": cons.fov_x,
            "fov_y_m": cons.fov_y,
            "min_aperture_for_dof": cons.min_aperture_for_dof,
            "required_exposure_s": cons.required_exposure,
            "chosen_exposure_s": cons.chosen_exposure,
            "feasible": cons.feasible,
            "violations": list(cons.violations),
        },
    }
    if include_stage_spectra:
        wavelengths = report.stage_spectra[0][1].grid.points
        doc["stage_spectra"] = {
            "wavelength_nm": [float(w) for w in wavelengths],
            "stages": [
                {"name": name, "unit": unit, "values": [float(v) for v in spectrum.values]}
                for (name, spectrum), unit in zip(report.stage_spectra, STAGE_UNITS)
            ],
        }
    return _rounded(doc)


def sweep_document(result: SweepResult) -> dict:
    return _rounded({
        "schema_version": SCHEMA_VERSION,
        "columns": list(result.columns),
        "rows": [list(row) for row in result.rows],
    })
