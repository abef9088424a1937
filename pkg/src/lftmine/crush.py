"""Crush response evaluation: phenomenological surrogate and trace files.

The surrogate stands in for the explicit finite-element crush stage. It is
not a validated mechanics model; it is a deterministic evaluator with the
right monotonic trends, built from two classical ingredients:

* square-tube progressive folding, mean force
      Pm_tube = 13.06 sigma_flow a^(1/3) t^(5/3)        [N, mm, MPa]
* lattice axial capacity per transverse cross-section
      Pm_lat = eta sigma_flow (pi d^2 / 4) (n_vert_layer + n_diag_layer sin omega)

The combined mean force is Pm = Pm_tube + interaction * Pm_lat, and the
force-displacement curve is a fold-wise oscillation around Pm with an
initial triangular peak:

    F(x) = Pm (1 + A sin(2 pi k x / z))   for x > 0.05 z
    F(x) = triangle through (0, 0), (0.025 z, peak * Pm), (0.05 z, F_base)

with crush end z = crush_fraction * (H - h). Every constant is a
:class:`SurrogateParams` field so the evaluator can be recalibrated against
external simulation or test data without code changes.

External curves (test or FE exports) can replace the surrogate through
:func:`ingest_trace`; the CSV format is two columns with header ``x_mm,F_kN``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .errors import BoundsError, TraceError
from .geometry import DESIGN_BOUNDS, DerivedGeometry, DesignPoint, MaterialSpec, TubeConstants

N_TO_KN = 1e-3

# Fraction of the stroke holding the initial peak; apex at half of it.
PEAK_END_FRACTION = 0.05


@dataclass(frozen=True)
class CrushTrace:
    """Sampled force-displacement curve: x in mm (from 0), F in kN."""

    samples: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if len(self.samples) < 2:
            raise TraceError("trace needs at least two samples")
        if self.samples[0][0] != 0.0:
            raise TraceError(f"trace must start at x=0, got x={self.samples[0][0]}")
        for i in range(len(self.samples)):
            x, f = self.samples[i]
            if f < 0:
                raise TraceError(f"negative force {f} at sample {i}")
            if i > 0 and x <= self.samples[i - 1][0]:
                raise TraceError(
                    f"displacement not strictly increasing at sample {i}: "
                    f"{self.samples[i - 1][0]} -> {x}"
                )

    @property
    def z(self) -> float:
        """Crush distance: the last sampled displacement."""
        return self.samples[-1][0]

    @property
    def x(self) -> tuple[float, ...]:
        return tuple(s[0] for s in self.samples)

    @property
    def force(self) -> tuple[float, ...]:
        return tuple(s[1] for s in self.samples)


@dataclass(frozen=True)
class SurrogateParams:
    """Tunable constants of the crush surrogate.

    crush_fraction: fraction of the crushable height swept before stopping
    peak_factor: initial peak force / mean force, >= 1
    fold_amplitude: relative amplitude of the fold oscillation, in [0, 1)
    fold_count: folds over the stroke; None derives max(4, n) per design
    lattice_efficiency: fraction of strut axial capacity realized
    interaction_factor: multiplier on the lattice share inside a tube
    sample_step: trace sampling step, mm
    """

    crush_fraction: float = 0.7
    peak_factor: float = 1.3
    fold_amplitude: float = 0.25
    fold_count: int | None = None
    lattice_efficiency: float = 0.5
    interaction_factor: float = 1.1
    sample_step: float = 0.5

    def __post_init__(self) -> None:
        if not 0 < self.crush_fraction <= 1:
            raise BoundsError(f"crush_fraction={self.crush_fraction} must be in (0, 1]")
        if self.peak_factor < 1:
            raise BoundsError(f"peak_factor={self.peak_factor} must be at least 1")
        if not 0 <= self.fold_amplitude < 1:
            raise BoundsError(f"fold_amplitude={self.fold_amplitude} must be in [0, 1)")
        if self.fold_count is not None and self.fold_count < 1:
            raise BoundsError(f"fold_count={self.fold_count} must be at least 1")
        if self.lattice_efficiency <= 0 or self.interaction_factor <= 0:
            raise BoundsError("lattice_efficiency and interaction_factor must be positive")
        if self.sample_step <= 0:
            raise BoundsError(f"sample_step={self.sample_step} must be positive")

    def folds_for(self, n_layers: int) -> int:
        if self.fold_count is not None:
            return self.fold_count
        return max(4, n_layers)


def mean_tube_force(t: float, tube_mat: MaterialSpec, c: TubeConstants) -> float:
    """Square-tube progressive-folding mean crush force in kN."""
    lo, hi = DESIGN_BOUNDS["t"]
    if not lo <= t <= hi:
        raise BoundsError(f"tube thickness t={t} outside allowed range [{lo}, {hi}]")
    return 13.06 * tube_mat.sigma_flow * c.a ** (1.0 / 3.0) * t ** (5.0 / 3.0) * N_TO_KN


def mean_lattice_force(
    dp: DesignPoint, g: DerivedGeometry, lat_mat: MaterialSpec, p: SurrogateParams
) -> float:
    """Lattice mean force from one transverse layer cross-section, kN."""
    rod_area = math.pi * dp.d * dp.d / 4.0
    n_vert_layer = (dp.m + 1) ** 2
    n_diag_layer = 8 * dp.m * dp.m
    struts = n_vert_layer + n_diag_layer * math.sin(g.omega)
    return p.lattice_efficiency * lat_mat.sigma_flow * rod_area * struts * N_TO_KN


def _sample_grid(z: float, step: float) -> list[float]:
    """Uniform grid over [0, z] plus the triangle breakpoints."""
    xs: list[float] = []
    i = 0
    # strict < keeps the closing sample exactly at z
    while i * step < z:
        xs.append(i * step)
        i += 1
    xs.append(z)
    for bp in (0.5 * PEAK_END_FRACTION * z, PEAK_END_FRACTION * z):
        if bp not in xs:
            xs.append(bp)
    return sorted(xs)

def _trace_from_mean_force(pm_total: float, z: float, folds: int, p: SurrogateParams) -> CrushTrace:
    x_apex = 0.5 * PEAK_END_FRACTION * z
    x_knee = PEAK_END_FRACTION * z
    f_peak = p.peak_factor * pm_total

    def base(x: float) -> float:
        return pm_total * (1.0 + p.fold_amplitude * math.sin(2.0 * math.pi * folds * x / z))

    f_knee = base(x_knee)

    def force(x: float) -> float:
        if x <= x_apex:
            return f_peak * x / x_apex
        if x <= x_knee:
            return f_peak + (f_knee - f_peak) * (x - x_apex) / (x_knee - x_apex)
        return base(x)

    return CrushTrace(samples=tuple((x, force(x)) for x in _sample_grid(z, p.sample_step)))


def simulate_crush(
    dp: DesignPoint,
    g: DerivedGeometry,
    tube_mat: MaterialSpec,
    lat_mat: MaterialSpec,
    p: SurrogateParams = SurrogateParams(),
    c: TubeConstants = TubeConstants(),
) -> CrushTrace:
    """Deterministic surrogate trace for a lattice-filled tube."""
    if dp.d < 0:
        raise BoundsError(f"rod diameter d={dp.d} must be non-negative")
    pm = mean_tube_force(dp.t, tube_mat, c) + p.interaction_factor * mean_lattice_force(
        dp, g, lat_mat, p
    )
    z = p.crush_fraction * (c.H - dp.h)
    return _trace_from_mean_force(pm, z, p.folds_for(dp.n), p)


def hollow_trace(
    t: float,
    tube_mat: MaterialSpec,
    p: SurrogateParams = SurrogateParams(),
    c: TubeConstants = TubeConstants(),
) -> CrushTrace:
    """Surrogate trace for the hollow tube of the same thickness."""
    pm = mean_tube_force(t, tube_mat, c)
    z = p.crush_fraction * c.H
    return _trace_from_mean_force(pm, z, p.folds_for(0), p)


TRACE_HEADER = "x_mm,F_kN"


def write_trace(trace: CrushTrace, path: str | Path) -> None:
    """Write a trace CSV; floats use repr so read-back is bit-identical."""
    lines = [TRACE_HEADER]
    lines.extend(f"{x!r},{f!r}" for x, f in trace.samples)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def ingest_trace(path: str | Path) -> CrushTrace:
    """Parse a two-column trace CSV, reporting the offending row on error."""
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].strip() != TRACE_HEADER:
        raise TraceError(f"{path}: first line must be the header '{TRACE_HEADER}'")
    samples: list[tuple[float, float]] = []
    for row, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise TraceError(f"{path}: row {row}: expected 2 columns, got {len(parts)}")
        try:
            x, f = float(parts[0]), float(parts[1])
        except ValueError:
            raise TraceError(f"{path}: row {row}: non-numeric value in {line!r}") from None
        if f < 0:
            raise TraceError(f"{path}: row {row}: negative force {f}")
        if samples and x <= samples[-1][0]:
            raise TraceError(
                f"{path}: row {row}: displacement {x} not above previous {samples[-1][0]}"
            )
        samples.append((x, f))
    if len(samples) < 2:
        raise TraceError(f"{path}: trace needs at least two samples")
    if samples[0][0] != 0.0:
        raise TraceError(f"{path}: row 2: trace must start at x=0, got {samples[0][0]}")
    return CrushTrace(samples=tuple(samples))
