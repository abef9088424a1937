"""Crashworthiness indicators computed from a force-displacement trace.

All indicators derive from the trapezoid integral of the trace:

    TEA = integral of F dx            total energy absorption, kJ
    SEA = TEA / mass                  specific energy absorption, kJ/kg
    Pm  = TEA / z                     mean crush force, kN
    PCF = max F over the initial window   peak crush force, kN
    CFE = 100 Pm / PCF                crush force efficiency, %

PCF follows the initial-peak convention: the maximum is taken over the
first ``peak_window`` fraction of the stroke (default 20 %), so late fold
peaks or densification spikes in measured curves do not count as the
initial peak. Under that convention CFE can exceed 100 %.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .crush import CrushTrace
from .errors import BoundsError, TraceError

DEFAULT_PEAK_WINDOW = 0.2


@dataclass(frozen=True)
class CrashMetrics:
    """Indicator bundle for one evaluated design.

    z_mm is the crush distance the indicators were integrated over; it is
    zero when the bundle was filled from reported values rather than a
    trace.
    """

    mass_kg: float
    tea_kj: float
    sea_kj_per_kg: float
    pm_kn: float
    pcf_kn: float
    cfe_pct: float
    z_mm: float = 0.0


def trapezoid_energy(trace: CrushTrace) -> float:
    """Trapezoid-rule integral of the trace in kN*mm (equal to J)."""
    terms = []
    for (x0, f0), (x1, f1) in zip(trace.samples, trace.samples[1:]):
        terms.append(0.5 * (x1 - x0) * (f0 + f1))
    return math.fsum(terms)


def peak_force(trace: CrushTrace, peak_window: float = DEFAULT_PEAK_WINDOW) -> float:
    """Largest sampled force within the initial window of the stroke."""
    if not 0 < peak_window <= 1:
        raise BoundsError(f"peak_window={peak_window} must be in (0, 1]")
    cutoff = peak_window * trace.z
    return max(f for x, f in trace.samples if x <= cutoff)


def compute_metrics(
    trace: CrushTrace, mass_kg: float, peak_window: float = DEFAULT_PEAK_WINDOW
) -> CrashMetrics:
    """Evaluate all indicators for one trace and structure mass."""
    if mass_kg <= 0:
        raise BoundsError(f"mass_kg={mass_kg} must be positive")
    energy_j = trapezoid_energy(trace)
    tea_kj = energy_j / 1000.0
    pm_kn = energy_j / trace.z
    pcf_kn = peak_force(trace, peak_window)
    if pcf_kn <= 0:
        raise TraceError("peak force in the initial window is zero; CFE is undefined")
    return CrashMetrics(
        mass_kg=mass_kg,
        tea_kj=tea_kj,
        sea_kj_per_kg=tea_kj / mass_kg,
        pm_kn=pm_kn,
        pcf_kn=pcf_kn,
        cfe_pct=100.0 * pm_kn / pcf_kn,
        z_mm=trace.z,
    )
