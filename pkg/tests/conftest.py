"""Shared test data: the printed validation tables and small builders.

Each table lists externally reported designs with their indicator values
and grade. Rows are (d_mm, n, m, h_mm, t_mm, SEA, second indicator,
grade) where the second indicator is CFE % for the efficiency objective,
TEA kJ for the total-energy objective, and mass kg for the lightweight
objective. The grades follow from the indicator values alone, so these
rows pin down the grading thresholds without any crush model in the
loop.
"""

from __future__ import annotations

from lftmine.dtree import ATTRIBUTE_ORDER, Dataset
from lftmine.metrics import CrashMetrics

# grouped by the design rule each block was sampled from:
# e-block {d > 2, n > 2, m > 3}, g-block {1.5 < d <= 2, m > 2, n <= 4},
# b-block {d <= 1}
EFFICIENCY_ROWS = [
    (2.2, 6, 5, 5.0, 1.1, 26.81, 124.18, "e"),
    (2.4, 5, 4, 1.0, 2.0, 21.12, 59.85, "e"),
    (2.8, 3, 4, 2.0, 1.4, 20.78, 70.23, "e"),
    (2.6, 5, 4, 4.0, 0.8, 22.53, 119.24, "e"),
    (3.0, 4, 5, 1.0, 1.7, 32.36, 103.81, "e"),
    (1.6, 4, 5, 5.0, 1.1, 14.07, 47.95, "g"),
    (1.7, 3, 3, 1.0, 2.0, 14.23, 35.69, "g"),
    (1.9, 2, 4, 2.0, 1.4, 10.56, 30.23, "b"),
    (1.8, 3, 4, 4.0, 0.8, 10.96, 38.87, "b"),
    (2.0, 3, 5, 1.0, 1.7, 14.67, 40.86, "g"),
    (1.0, 6, 5, 0.0, 2.0, 13.62, 31.45, "b"),
    (1.0, 2, 3, 1.0, 1.7, 12.80, 28.14, "b"),
    (1.0, 4, 4, 4.0, 0.8, 8.09, 20.94, "b"),
    (1.0, 3, 4, 2.0, 1.4, 11.07, 25.96, "b"),
    (1.0, 5, 2, 5.0, 1.1, 9.73, 21.67, "b"),
]

# e-block {d > 2, n > 2, m > 3}, g-block {1 < d <= 2, m > 2, 2 < n <= 4,
# t > 1.4}, b-block {m <= 2}
TOTAL_ENERGY_ROWS = [
    (2.2, 6, 5, 5.0, 1.1, 26.74, 10.61, "e"),
    (2.4, 5, 4, 1.0, 2.0, 20.63, 10.28, "e"),
    (2.8, 3, 4, 2.0, 1.4, 21.21, 9.32, "e"),
    (2.6, 5, 4, 4.0, 0.8, 23.24, 7.59, "e"),
    (3.0, 4, 5, 1.0, 1.7, 33.69, 21.86, "e"),
    (1.2, 4, 5, 5.0, 1.6, 11.64, 3.82, "b"),
    (1.4, 3, 3, 1.0, 2.0, 14.11, 5.13, "g"),
    (1.8, 2, 4, 2.0, 1.8, 12.03, 4.56, "b"),
    (1.6, 3, 4, 4.0, 1.8, 13.07, 4.78, "b"),
    (2.0, 3, 5, 1.0, 2.0, 15.21, 7.66, "g"),
    (1.2, 6, 2, 5.0, 2.0, 13.11, 4.55, "b"),
    (1.4, 2, 2, 1.0, 1.7, 12.78, 3.77, "b"),
    (1.8, 4, 2, 3.0, 0.8, 8.25, 1.33, "b"),
    (1.6, 3, 2, 4.0, 1.4, 10.77, 2.70, "b"),
    (2.0, 5, 2, 1.0, 1.1, 9.88, 2.17, "b"),
]

# e-block {d > 2, n > 2, m <= 4, t <= 1.7}, g-block {1.5 < d <= 2,
# m > 2, 2 < n <= 4}, b-block {d > 1, n <= 2} with four printed rows
LIGHTWEIGHT_ROWS = [
    (2.2, 6, 4, 5.0, 1.1, 20.35, 0.33, "e"),
    (2.4, 5, 2, 1.0, 1.7, 13.56, 0.34, "b"),
    (2.8, 3, 3, 2.0, 1.4, 16.09, 0.36, "e"),
    (2.6, 5, 3, 4.0, 0.8, 16.03, 0.25, "e"),
    (3.0, 4, 4, 1.0, 1.1, 27.50, 0.43, "e"),
    (1.6, 4, 5, 5.0, 1.1, 12.89, 0.29, "b"),
    (1.7, 4, 3, 1.0, 2.0, 14.34, 0.38, "g"),
    (1.9, 3, 4, 2.0, 1.4, 13.04, 0.33, "b"),
    (1.8, 4, 4, 4.0, 0.8, 13.32, 0.22, "b"),
    (2.0, 3, 5, 1.0, 1.7, 14.39, 0.45, "g"),
    (1.2, 2, 5, 5.0, 2.0, 13.58, 0.38, "b"),
    (1.6, 2, 2, 1.0, 1.7, 12.08, 0.30, "b"),
    (2.4, 2, 4, 3.0, 0.8, 10.38, 0.27, "b"),
    (2.0, 2, 3, 4.0, 1.4, 11.20, 0.29, "b"),
]


def reported_metrics(
    sea: float, cfe: float = 0.0, tea: float = 0.0, mass: float = 1.0
) -> CrashMetrics:
    """Indicator bundle from reported values; unspecified fields inert."""
    return CrashMetrics(
        mass_kg=mass,
        tea_kj=tea,
        sea_kj_per_kg=sea,
        pm_kn=0.0,
        pcf_kn=0.0,
        cfe_pct=cfe,
    )


def rows_as_dataset(rows) -> Dataset:
    """Training table over (d, n, m, t, h) with the printed grades."""
    table = []
    labels = []
    for d, n, m, h, t, _sea, _second, grade in rows:
        values = {"d": d, "n": float(n), "m": float(m), "t": t, "h": h}
        table.append(tuple(values[a] for a in ATTRIBUTE_ORDER))
        labels.append(grade)
    return Dataset(attributes=ATTRIBUTE_ORDER, rows=tuple(table), labels=tuple(labels))
