"""uwcam: spectral simulation and design exploration for underwater cameras."""

from .engine import EvaluationReport, SweepAxis, SweepSpec, evaluate, feasibility, sweep
from .presets import Catalog, load_catalog, load_default_catalog
from .scenario import Scenario, load_scenario_file, scenario_from_document
from .spectral import DEFAULT_GRID, Spectrum, UnitRole, WavelengthGrid

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "DEFAULT_GRID",
    "EvaluationReport",
    "Scenario",
    "Spectrum",
    "SweepAxis",
    "SweepSpec",
    "UnitRole",
    "WavelengthGrid",
    "evaluate",
    "feasibility",
    "load_catalog",
    "load_default_catalog",
    "load_scenario_file",
    "scenario_from_document",
    "sweep",
    "__version__",
]
