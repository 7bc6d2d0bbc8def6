"""CIE 1931 photopic luminosity function V(lambda), embedded at 5 nm.

Bridges lumen-specified light sources to radiant watts: 1 W of
monochromatic 555 nm light is 683 lm by definition. The table spans
380-780 nm (padded to zero just outside, since photopic response vanishes
there).
"""
from __future__ import annotations

import numpy as np

from .spectral import Spectrum, UnitRole, WavelengthGrid

LUMENS_PER_WATT_AT_PEAK = 683.0

# CIE 1931 standard photopic observer V(lambda), 380-780 nm at 5 nm.
_VLAMBDA_TABLE = [
    (375.0, 0.0),
    (380.0, 0.000039), (385.0, 0.000064), (390.0, 0.000120), (395.0, 0.000217),
    (400.0, 0.000396), (405.0, 0.000640), (410.0, 0.001210), (415.0, 0.002180),
    (420.0, 0.004000), (425.0, 0.007300), (430.0, 0.011600), (435.0, 0.016840),
    (440.0, 0.023000), (445.0, 0.029800), (450.0, 0.038000), (455.0, 0.048000),
    (460.0, 0.060000), (465.0, 0.073900), (470.0, 0.090980), (475.0, 0.112600),
    (480.0, 0.139020), (485.0, 0.169300), (490.0, 0.208020), (495.0, 0.258600),
    (500.0, 0.323000), (505.0, 0.407300), (510.0, 0.503000), (515.0, 0.608200),
    (520.0, 0.710000), (525.0, 0.793200), (530.0, 0.862000), (535.0, 0.914850),
    (540.0, 0.954000), (545.0, 0.980300), (550.0, 0.994950), (555.0, 1.000000),
    (560.0, 0.995000), (565.0, 0.978600), (570.0, 0.952000), (575.0, 0.915400),
    (580.0, 0.870000), (585.0, 0.816300), (590.0, 0.757000), (595.0, 0.694900),
    (600.0, 0.631000), (605.0, 0.566800), (610.0, 0.503000), (615.0, 0.441200),
    (620.0, 0.381000), (625.0, 0.321000), (630.0, 0.265000), (635.0, 0.217000),
    (640.0, 0.175000), (645.0, 0.138200), (650.0, 0.107000), (655.0, 0.081600),
    (660.0, 0.061000), (665.0, 0.044580), (670.0, 0.032000), (675.0, 0.023200),
    (680.0, 0.017000), (685.0, 0.011920), (690.0, 0.008210), (695.0, 0.005723),
    (700.0, 0.004102), (705.0, 0.002929), (710.0, 0.002091), (715.0, 0.001484),
    (720.0, 0.001047), (725.0, 0.000740), (730.0, 0.000520), (735.0, 0.000361),
    (740.0, 0.000249), (745.0, 0.000172), (750.0, 0.000120), (755.0, 0.000085),
    (760.0, 0.000060), (765.0, 0.000042), (770.0, 0.000030), (775.0, 0.000021),
    (780.0, 0.000015),
    (785.0, 0.0),
]


def photopic_curve() -> Spectrum:
    """V(lambda) as a dimensionless spectrum on its native 5 nm grid."""
    wl = np.array([row[0] for row in _VLAMBDA_TABLE])
    v = np.array([row[1] for row in _VLAMBDA_TABLE])
    return Spectrum(WavelengthGrid(wl), v, UnitRole.DIMENSIONLESS)
