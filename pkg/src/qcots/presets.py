"""Parameter sets from the published instance tables, with their thresholds."""

from __future__ import annotations

from .scheme import ParameterSet

# name -> (p, w_e, w_y, w_c, b, log2 P{wt(e*)=0}, log2 C_ISD) as published
PUBLISHED = {
    "table1-row1": (3072, 85, 85, 7, 5, -3.37, 35.10),
    "table1-row2": (4801, 90, 100, 10, 7, -1.15, 37.58),
    "table1-row3": (6272, 125, 125, 10, 7, -1.84, 38.37),
    "table1-row4": (9857, 150, 200, 15, 9, -0.23, 42.54),
    "table2-row1": (4801, 90, 300, 8, 6, -4.01, 37.05),
    "table2-row2": (4801, 100, 400, 6, 4, -12.16, 38.95),
    "table2-row3": (4801, 90, 1000, 10, 7, -13.10, 39.18),
    "table2-row4": (4801, 90, 100, 20, 12, -0.46, 38.56),
    "table2-row5": (4801, 180, 100, 10, 7, -16.60, 54.98),
}

PRESETS = {name: ParameterSet(*row[:4]) for name, row in PUBLISHED.items()}
THRESHOLDS = {name: row[4] for name, row in PUBLISHED.items()}


def preset(name: str) -> ParameterSet:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
