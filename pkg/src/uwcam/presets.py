"""Ingestion, validation, and cataloging of data profiles.

Profiles live as flat files in a data directory: `<kind>.<name>.csv` for
spectral curves (water, light, material, lens, qe) and `sensor.<name>.profile`
for EMVA parameter sets. Bundled profiles ship inside the package; a user
directory (``--data-dir`` flag or ``UWCAM_DATA_DIR``, default ``./data`` when
present) overlays them by (kind, name).

Validation never raises on bad content: every finding becomes a Diagnostic
and partially-valid directories still yield a usable catalog.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .errors import Diagnostic, has_errors
from .sensor import SensorModel
from .spectral import (Spectrum, UnitRole, WavelengthGrid,
                       WAVELENGTH_MAX_NM, WAVELENGTH_MIN_NM, integrate)

CSV_KINDS = {
    "water": ("b_per_m", None),
    "light": ("relative_power", None),
    "material": ("reflectance", 1.0),
    "lens": ("transmission", 1.0),
    "qe": ("qe", 1.0),
}

LIGHT_PRESET_KINDS = ("led", "fluorescent", "sunlight", "custom")

# Spacing this much beyond the median step is reported as an interpolated gap.
GAP_FACTOR = 2.5


@dataclass(frozen=True)
class SpectralProfile:
    kind: str
    name: str
    spectrum: Spectrum
    provenance: str | None = None
    preset_kind: str | None = None          # lights only
    normalization_factor: float | None = None  # lights only: factor applied on load


@dataclass(frozen=True)
class SensorProfile:
    name: str
    model: SensorModel
    provenance: str | None = None


@dataclass(frozen=True)
class CatalogEntry:
    kind: str
    name: str
    payload: object  # SpectralProfile | SensorProfile
    path: str | None
    warnings: tuple[Diagnostic, ...] = ()


@dataclass
class Catalog:
    entries: dict[tuple[str, str], CatalogEntry] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)

    def get(self, kind: str, name: str) -> CatalogEntry | None:
        return self.entries.get((kind, name))

    def names(self, kind: str) -> list[str]:
        return sorted(name for (k, name) in self.entries if k == kind)

    def merged_with(self, other: "Catalog") -> "Catalog":
        """Overlay `other` on top of this catalog; colliding names shadow."""
        merged = Catalog(dict(self.entries), list(self.diagnostics))
        for key, entry in other.entries.items():
            if key in merged.entries:
                merged.diagnostics.append(Diagnostic(
                    "warning", "preset-shadowed",
                    f"{key[0]} preset '{key[1]}' overrides a bundled profile",
                    source=entry.path))
            merged.entries[key] = entry
        merged.diagnostics.extend(other.diagnostics)
        return merged


def _parse_csv_rows(text: str, source: str) -> tuple[list[tuple[float, float]], dict, list[Diagnostic]]:
    """Parse a two-column spectrum CSV; returns rows, comment metadata, diagnostics."""
    rows: list[tuple[float, float]] = []
    meta: dict[str, str] = {}
    diags: list[Diagnostic] = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if ":" in body:
                key, _, value = body.partition(":")
                meta[key.strip().lower()] = value.strip()
            continue
        if not header_seen:
            header_seen = True
            parts = [p.strip().lower() for p in line.split(",")]
            if len(parts) != 2 or parts[0] != "wavelength_nm":
                diags.append(Diagnostic("error", "bad-header",
                                        f"expected header 'wavelength_nm,<value>', got {line!r}",
                                        source=source, line=lineno))
            continue
        parts = line.split(",")
        if len(parts) != 2:
            diags.append(Diagnostic("error", "bad-row",
                                    f"expected two comma-separated values, got {line!r}",
                                    source=source, line=lineno))
            continue
        try:
            wl, val = float(parts[0]), float(parts[1])
        except ValueError:
            diags.append(Diagnostic("error", "bad-row",
                                    f"non-numeric value in {line!r}",
                                    source=source, line=lineno))
            continue
        if rows and wl <= rows[-1][0]:
            diags.append(Diagnostic("error", "non-monotonic-grid",
                                    f"wavelength {wl:g} nm does not increase past {rows[-1][0]:g} nm",
                                    source=source, line=lineno))
            continue
        rows.append((wl, val))
    return rows, meta, diags


def validate_profile(kind: str, raw: bytes | str, source: str = "<memory>"
                     ) -> tuple[object | None, list[Diagnostic]]:
    """Validate raw profile content; returns (payload or None, diagnostics)."""
    text = raw.decode("utf-8", errors="replace") if isinstance(raw, bytes) else raw
    if kind == "sensor":
        return _validate_sensor_profile(text, source)
    if kind not in CSV_KINDS:
        return None, [Diagnostic("error", "unknown-kind", f"unknown profile kind {kind!r}",
                                 source=source)]
    return _validate_csv_profile(kind, text, source)


def _validate_csv_profile(kind: str, text: str, source: str
                          ) -> tuple[SpectralProfile | None, list[Diagnostic]]:
    value_name, upper_bound = CSV_KINDS[kind]
    rows, meta, diags = _parse_csv_rows(text, source)

    for wl, _ in rows:
        if wl < WAVELENGTH_MIN_NM or wl > WAVELENGTH_MAX_NM:
            diags.append(Diagnostic("error", "wavelength-out-of-band",
                                    f"{wl:g} nm lies outside [{WAVELENGTH_MIN_NM:g}, "
                                    f"{WAVELENGTH_MAX_NM:g}] nm", source=source))
    for wl, val in rows:
        if val < 0:
            diags.append(Diagnostic("error", "negative-value",
                                    f"{value_name} is negative at {wl:g} nm", source=source))
        elif upper_bound is not None and val > upper_bound:
            diags.append(Diagnostic("error", f"{value_name}-out-of-range",
                                    f"{value_name}={val:g} at {wl:g} nm exceeds {upper_bound:g}",
                                    source=source))
    if len(rows) < 2:
        diags.append(Diagnostic("error", "empty-profile",
                                "a spectrum needs at least two samples", source=source))
    if has_errors(diags):
        return None, diags

    wavelengths = np.array([r[0] for r in rows])
    values = np.array([r[1] for r in rows])
    steps = np.diff(wavelengths)
    median_step = float(np.median(steps))
    for i, step in enumerate(steps):
        if step > GAP_FACTOR * median_step:
            diags.append(Diagnostic(
                "warning", "interpolated-gap",
                f"{step:g} nm gap between {wavelengths[i]:g} and {wavelengths[i + 1]:g} nm "
                "will be linearly interpolated", source=source))

    spectrum = Spectrum(WavelengthGrid(wavelengths), values, UnitRole.DIMENSIONLESS)
    normalization = None
    preset_kind = None
    if kind == "light":
        preset_kind = meta.get("preset_kind", "custom")
        if preset_kind not in LIGHT_PRESET_KINDS:
            diags.append(Diagnostic("warning", "unknown-preset-kind",
                                    f"preset_kind {preset_kind!r} treated as 'custom'",
                                    source=source))
            preset_kind = "custom"
        total = integrate(spectrum)
        if total <= 0:
            diags.append(Diagnostic("error", "zero-spectrum",
                                    "light spectrum integrates to zero", source=source))
            return None, diags
        if abs(total - 1.0) > 1e-9:
            normalization = 1.0 / total
            spectrum = spectrum.with_values(spectrum.values * normalization)

    return SpectralProfile(kind=kind, name="", spectrum=spectrum,
                           provenance=meta.get("provenance"),
                           preset_kind=preset_kind,
                           normalization_factor=normalization), diags


_SENSOR_FIELDS = {
    "pixel_area_m2": float,
    "resolution_x": int,
    "resolution_y": int,
    "sensor_size_x_mm": float,
    "sensor_size_y_mm": float,
    "system_gain_dn_per_e": float,
    "dark_signal_dn": float,
    "dark_noise_var_e2": float,
    "bit_depth": int,
    "qe_csv": str,
}
_SENSOR_OPTIONAL = {"name", "mono", "snr_denominator", "provenance"}


def _validate_sensor_profile(text: str, source: str,
                             qe_lookup=None) -> tuple[SensorProfile | None, list[Diagnostic]]:
    diags: list[Diagnostic] = []
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        return None, [Diagnostic("error", "bad-document", f"not parseable: {exc}", source=source)]
    if not isinstance(doc, dict):
        return None, [Diagnostic("error", "bad-document",
                                 "sensor profile must be a key-value document", source=source)]

    values = {}
    for key, cast in _SENSOR_FIELDS.items():
        if key not in doc:
            # EMVA fields are never silently defaulted; the user must fill them.
            diags.append(Diagnostic("error", "missing-field",
                                    f"sensor profile field '{key}' is required", source=source))
            continue
        try:
            values[key] = cast(doc[key])
        except (TypeError, ValueError):
            diags.append(Diagnostic("error", "bad-field",
                                    f"field '{key}' has invalid value {doc[key]!r}", source=source))
    for key in doc:
        if key not in _SENSOR_FIELDS and key not in _SENSOR_OPTIONAL:
            diags.append(Diagnostic("warning", "unknown-field",
                                    f"field '{key}' is not recognized", source=source))
    if doc.get("mono") is False:
        diags.append(Diagnostic("warning", "color-sensor-green-approx",
                                "color sensor approximated by its green-channel QE",
                                source=source))
    if has_errors(diags):
        return None, diags

    qe_ref = values.pop("qe_csv")
    qe_spectrum = None
    if qe_lookup is not None:
        qe_spectrum, qe_diags = qe_lookup(qe_ref)
        diags.extend(qe_diags)
        if qe_spectrum is None:
            return None, diags
    else:
        diags.append(Diagnostic("warning", "qe-unresolved",
                                f"QE curve '{qe_ref}' not resolved outside a catalog directory",
                                source=source))
        qe_spectrum = Spectrum(WavelengthGrid(np.array([WAVELENGTH_MIN_NM, WAVELENGTH_MAX_NM])),
                               np.array([0.5, 0.5]), UnitRole.DIMENSIONLESS)

    try:
        model = SensorModel(
            name=str(doc.get("name", "")),
            pixel_area=values["pixel_area_m2"],
            resolution_x=values["resolution_x"],
            resolution_y=values["resolution_y"],
            sensor_size_x=values["sensor_size_x_mm"],
            sensor_size_y=values["sensor_size_y_mm"],
            qe=qe_spectrum,
            system_gain=values["system_gain_dn_per_e"],
            dark_signal=values["dark_signal_dn"],
            dark_noise_var=values["dark_noise_var_e2"],
            bit_depth=values["bit_depth"],
            snr_denominator=str(doc.get("snr_denominator", "paper")),
        )
    except ValueError as exc:
        diags.append(Diagnostic("error", "invalid-sensor", str(exc), source=source))
        return None, diags
    return SensorProfile(name=model.name, model=model,
                         provenance=doc.get("provenance")), diags


def _split_profile_filename(path: Path) -> tuple[str, str] | None:
    stem_parts = path.name.split(".")
    if len(stem_parts) < 3:
        return None
    kind = stem_parts[0]
    name = ".".join(stem_parts[1:-1])
    return kind, name


def load_catalog(directory: str | os.PathLike) -> Catalog:
    """Load every recognized profile in `directory` (not recursive).

    Malformed files are reported in catalog.diagnostics and skipped; the
    rest of the directory still loads.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"data directory {directory} does not exist")
    catalog = Catalog()

    files = sorted(p for p in directory.iterdir() if p.is_file())
    csv_texts: dict[str, tuple[Path, str]] = {}
    for path in files:
        if path.suffix == ".csv":
            csv_texts[path.name] = (path, path.read_text(encoding="utf-8"))

    def qe_lookup(ref: str):
        if ref not in csv_texts:
            return None, [Diagnostic("error", "missing-qe-curve",
                                     f"referenced QE curve '{ref}' not found", source=ref)]
        qe_path, text = csv_texts[ref]
        payload, diags = _validate_csv_profile("qe", text, str(qe_path))
        if payload is None:
            return None, diags
        return payload.spectrum, diags

    for path in files:
        split = _split_profile_filename(path)
        if path.suffix == ".csv":
            if split is None or split[0] not in CSV_KINDS:
                catalog.diagnostics.append(Diagnostic(
                    "warning", "unknown-kind",
                    "file name does not follow '<kind>.<name>.csv'; skipped",
                    source=str(path)))
                continue
            kind, name = split
            payload, diags = _validate_csv_profile(kind, csv_texts[path.name][1], str(path))
            catalog.diagnostics.extend(diags)
            if payload is None:
                continue
            payload = SpectralProfile(kind=kind, name=name, spectrum=payload.spectrum,
                                      provenance=payload.provenance,
                                      preset_kind=payload.preset_kind,
                                      normalization_factor=payload.normalization_factor)
            catalog.entries[(kind, name)] = CatalogEntry(
                kind=kind, name=name, payload=payload, path=str(path),
                warnings=tuple(d for d in diags if d.severity == "warning"))
        elif path.suffix == ".profile":
            if split is None or split[0] != "sensor":
                catalog.diagnostics.append(Diagnostic(
                    "warning", "unknown-kind",
                    "file name does not follow 'sensor.<name>.profile'; skipped",
                    source=str(path)))
                continue
            _, name = split
            payload, diags = _validate_sensor_profile(path.read_text(encoding="utf-8"),
                                                      str(path), qe_lookup=qe_lookup)
            catalog.diagnostics.extend(diags)
            if payload is None:
                continue
            if not payload.name:
                payload = SensorProfile(name=name, model=payload.model,
                                        provenance=payload.provenance)
            catalog.entries[("sensor", name)] = CatalogEntry(
                kind="sensor", name=name, payload=payload, path=str(path),
                warnings=tuple(d for d in diags if d.severity == "warning"))
        else:
            catalog.diagnostics.append(Diagnostic(
                "warning", "unknown-file-skipped",
                f"unrecognized extension {path.suffix!r}; skipped", source=str(path)))
    return catalog


def serialize_profile(entry: CatalogEntry) -> str:
    """Canonical text form that round-trips through the loader bit-exactly."""
    payload = entry.payload
    if isinstance(payload, SpectralProfile):
        value_name, _ = CSV_KINDS[payload.kind]
        lines = []
        if payload.provenance:
            lines.append(f"# provenance: {payload.provenance}")
        if payload.kind == "light" and payload.preset_kind:
            lines.append(f"# preset_kind: {payload.preset_kind}")
        lines.append(f"wavelength_nm,{value_name}")
        for wl, val in zip(payload.spectrum.grid.points, payload.spectrum.values):
            lines.append(f"{float(wl)!r},{float(val)!r}")
        return "\n".join(lines) + "\n"
    if isinstance(payload, SensorProfile):
        m = payload.model
        doc = {
            "name": m.name,
            "pixel_area_m2": m.pixel_area,
            "resolution_x": m.resolution_x,
            "resolution_y": m.resolution_y,
            "sensor_size_x_mm": m.sensor_size_x,
            "sensor_size_y_mm": m.sensor_size_y,
            "system_gain_dn_per_e": m.system_gain,
            "dark_signal_dn": m.dark_signal,
            "dark_noise_var_e2": m.dark_noise_var,
            "bit_depth": m.bit_depth,
            "snr_denominator": m.snr_denominator,
            "qe_csv": f"qe.{payload.name}.csv",
        }
        if payload.provenance:
            doc["provenance"] = payload.provenance
        return yaml.safe_dump(doc, sort_keys=False)
    raise TypeError(f"cannot serialize {type(payload).__name__}")


def bundled_data_dir() -> Path:
    return Path(__file__).parent / "data"


def resolve_user_data_dir(explicit: str | None = None) -> Path | None:
    """Explicit flag > UWCAM_DATA_DIR > ./data when it exists."""
    if explicit:
        return Path(explicit)
    env = os.environ.get("UWCAM_DATA_DIR")
    if env:
        return Path(env)
    cwd_default = Path("./data")
    if cwd_default.is_dir():
        return cwd_default
    return None


def load_default_catalog(extra_dir: str | None = None) -> Catalog:
    """Bundled profiles overlaid with the resolved user directory, if any."""
    catalog = load_catalog(bundled_data_dir())
    user_dir = resolve_user_data_dir(extra_dir)
    if user_dir is not None and user_dir.is_dir() and user_dir != bundled_data_dir():
        catalog = catalog.merged_with(load_catalog(user_dir))
    return catalog
