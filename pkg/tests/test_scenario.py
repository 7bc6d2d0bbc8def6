import math

import pytest
import yaml

from uwcam.errors import ValidationError
from uwcam.presets import bundled_data_dir, load_default_catalog
from uwcam.scenario import (get_document_value, load_scenario_file,
                            scenario_from_document, scenario_schema,
                            set_document_value)


@pytest.fixture(scope="module")
def catalog():
    return load_default_catalog()


@pytest.fixture()
def doc():
    path = bundled_data_dir() / "scenarios" / "example-survey.yaml"
    return yaml.safe_load(path.read_text())


class TestScenarioFromDocument:
    def test_example_builds(self, catalog, doc):
        sc = scenario_from_document(doc, catalog)
        assert sc.light.luminous_flux == 25000
        assert sc.light.beam_half_angle == pytest.approx(math.radians(40))
        assert sc.geometry.light_path == pytest.approx(math.hypot(2.0, 0.4))
        assert sc.sensor.name == "sony-imx250"
        assert sc.effective_target_dn == 2048.0  # half of 2^12 by default
        # default circle of confusion is two pixel pitches
        assert sc.circle_of_confusion_mm == pytest.approx(2 * 0.00345, rel=1e-3)

    def test_unknown_preset_lists_options(self, catalog, doc):
        doc["water"]["preset"] = "jerlov-99"
        with pytest.raises(ValidationError) as exc:
            scenario_from_document(doc, catalog)
        diag = next(d for d in exc.value.diagnostics if d.code == "unknown-preset")
        assert "jerlov-oceanic-1" in diag.message

    def test_overlap_out_of_range_names_field(self, catalog, doc):
        doc["mission"]["overlap_fraction"] = 1.2
        with pytest.raises(ValidationError) as exc:
            scenario_from_document(doc, catalog)
        assert any(d.source == "mission.overlap_fraction" for d in exc.value.diagnostics)

    def test_multiple_errors_reported_together(self, catalog, doc):
        doc["mission"]["overlap_fraction"] = 1.2
        doc["lens"]["aperture_number"] = -1
        doc["light"]["beam_half_angle_deg"] = 120
        with pytest.raises(ValidationError) as exc:
            scenario_from_document(doc, catalog)
        sources = {d.source for d in exc.value.diagnostics}
        assert {"mission.overlap_fraction", "lens.aperture_number",
                "light.beam_half_angle_deg"} <= sources

    def test_missing_section(self, catalog, doc):
        del doc["water"]
        with pytest.raises(ValidationError) as exc:
            scenario_from_document(doc, catalog)
        assert any(d.source == "water" for d in exc.value.diagnostics)

    def test_manual_mode_requires_time(self, catalog, doc):
        doc["exposure"] = {"mode": "manual"}
        with pytest.raises(ValidationError) as exc:
            scenario_from_document(doc, catalog)
        assert any(d.source == "exposure.exposure_time_s" for d in exc.value.diagnostics)

    def test_target_above_saturation(self, catalog, doc):
        doc["exposure"]["target_dn"] = 5000  # imx250 preset is 12-bit
        with pytest.raises(ValidationError) as exc:
            scenario_from_document(doc, catalog)
        assert any(d.source == "exposure.target_dn" for d in exc.value.diagnostics)

    def test_schema_version_mismatch(self, catalog, doc):
        doc["schema_version"] = 99
        with pytest.raises(ValidationError) as exc:
            scenario_from_document(doc, catalog)
        assert any(d.code == "schema-version-mismatch" for d in exc.value.diagnostics)

    def test_dome_viewport(self, catalog, doc):
        doc["viewport"] = {"kind": "dome", "inner_radius_mm": 50,
                           "outer_radius_mm": 55, "glass_index": 1.52}
        sc = scenario_from_document(doc, catalog)
        assert sc.viewport.kind == "dome"

    def test_constant_reflectance_surface(self, catalog, doc):
        doc["surface"] = {"constant_reflectance": 0.35}
        sc = scenario_from_document(doc, catalog)
        assert sc.surface.reflectance.values[0] == 0.35

    def test_custom_csv_relative_to_document(self, catalog, tmp_path, doc):
        (tmp_path / "mywater.csv").write_text(
            "wavelength_nm,b_per_m\n400,0.2\n700,0.3\n")
        doc["water"] = {"profile_csv": "mywater.csv"}
        path = tmp_path / "scenario.yaml"
        path.write_text(yaml.safe_dump(doc))
        sc = load_scenario_file(path, catalog)
        assert sc.water.attenuation.values[0] == 0.2

    def test_snr_denominator_override(self, catalog, doc):
        doc["sensor"]["snr_denominator"] = "emva"
        sc = scenario_from_document(doc, catalog)
        assert sc.sensor.snr_denominator == "emva"


class TestDocumentPaths:
    def test_get_and_set(self, doc):
        assert get_document_value(doc, "lens.aperture_number") == 2.8
        set_document_value(doc, "lens.aperture_number", 4.0)
        assert doc["lens"]["aperture_number"] == 4.0

    def test_unknown_path_raises(self, doc):
        with pytest.raises(KeyError):
            get_document_value(doc, "lens.zoom_factor")
        with pytest.raises(KeyError):
            set_document_value(doc, "lens.zoom_factor", 1.0)


class TestScenarioSchema:
    def test_groups_cover_document(self, catalog, doc):
        schema = scenario_schema(catalog)
        group_names = {g["name"] for g in schema["groups"]}
        assert group_names == set(doc.keys()) - {"schema_version"}

    def test_presets_listed_in_schema(self, catalog):
        schema = scenario_schema(catalog)
        light_group = next(g for g in schema["groups"] if g["name"] == "light")
        preset_field = next(f for f in light_group["fields"] if f["type"] == "preset")
        assert "led-generic" in preset_field["options"]

    def test_number_fields_carry_bounds(self, catalog):
        schema = scenario_schema(catalog)
        mission = next(g for g in schema["groups"] if g["name"] == "mission")
        ovr = next(f for f in mission["fields"] if f["path"] == "mission.overlap_fraction")
        assert ovr["min"] == 0
        assert ovr["max"] == 0.999
