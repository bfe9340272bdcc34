"""Executable checks of the solver's structural behavior: ordered data stay
ordered, nonincreasing data stay nonincreasing, nontrivial data spread over
linearly growing regions, and linear dispersal alone conserves the mean.

The continuum equations satisfy all four properties exactly; on the grid
each becomes a runnable check with an explicit tolerance, and a scheme that
fails one cannot be trusted to reproduce front behavior. Each check owns its
runs and is reproducible: the same inputs give bitwise-identical verdicts on
one platform.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .dispersal import LINEAR_VARIANTS
from .errors import (
    DomainTooSmall,
    NonlinearVariant,
    PreconditionViolated,
    ZeroInitialCondition,
)
from .grid import Field
from .integrator import RunConfig, TabulatedInitial, run

__all__ = [
    "PropertyVerdict",
    "check_comparison",
    "check_monotone_preservation",
    "check_spreading",
    "check_mass_neutral",
    "verdict_report",
    "ordered_gaussian_pair",
    "smoothed_step",
]


@dataclass
class PropertyVerdict:
    """Outcome of one check: worst violation, where it happened, and the gate."""

    name: str
    passed: bool
    violation: float
    tolerance: float
    worst_time: Optional[float] = None
    worst_position: Optional[float] = None
    detail: str = ""

    def line(self) -> str:
        word = "pass" if self.passed else "fail"
        return f"{self.name} {word} {self.violation:.6e} {self.tolerance:.6e}"


def verdict_report(verdicts) -> str:
    """One line per check: `name pass|fail violation tolerance`."""
    return "\n".join(v.line() for v in verdicts) + "\n"


def _with_initial(config: RunConfig, values: np.ndarray) -> RunConfig:
    return replace(config, initial=TabulatedInitial.from_array(values))


def ordered_gaussian_pair(grid, rng: np.random.Generator) -> tuple:
    """Random smooth pair (u0, v0) with 0 <= u0 <= v0 <= 1 componentwise.

    v0 = u0 + bump * (1 - u0) keeps the pair ordered and inside [0, 1] while
    staying smooth, so single steps resolve it on any reasonable grid. Bump
    centers sit within the middle quarter of the box.
    """
    span = grid.L / 8.0
    width = float(rng.uniform(30.0, 150.0))
    center = float(rng.uniform(-span, span))
    amp = float(rng.uniform(0.2, 0.8))
    u0 = amp * np.exp(-((grid.x - center) ** 2) / width)
    width2 = float(rng.uniform(30.0, 150.0))
    center2 = float(rng.uniform(-span, span))
    lift = float(rng.uniform(0.1, 0.8))
    v0 = u0 + lift * np.exp(-((grid.x - center2) ** 2) / width2) * (1.0 - u0)
    return Field(grid, u0), Field(grid, v0)


def smoothed_step(grid, position: float = 0.0, width: float = 1.0) -> Field:
    """Nonincreasing logistic-in-x profile 1 / (1 + exp((x - position)/width))."""
    z = (grid.x - position) / width
    vals = np.empty_like(z)
    pos = z >= 0
    vals[pos] = np.exp(-z[pos]) / (1.0 + np.exp(-z[pos]))
    vals[~pos] = 1.0 / (1.0 + np.exp(z[~pos]))
    return Field(grid, vals)


def _front_window(traj) -> slice:
    """Node range free of seam contamination for front-mode trajectories."""
    if traj.guard_mode != "front":
        return slice(None)
    grid = traj.grid
    margin = int(round(traj.config.seam_margin_frac * (grid.n // 2)))
    return slice(margin, grid.n - margin)


def check_comparison(u0: Field, v0: Field, config: RunConfig, *, tolerance: float = 1e-9) -> PropertyVerdict:
    """Ordered initial data must stay ordered: u(t) <= v(t) for all snapshots.

    Both fields are evolved under the same config; the violation is the worst
    of max(u - v) over every snapshot and node.
    """
    a, b = u0.values, v0.values
    if a.shape != b.shape:
        raise PreconditionViolated("comparison inputs must share one grid")
    if not (np.all(a >= 0.0) and np.all(a <= b) and np.all(b <= 1.0)):
        raise PreconditionViolated("need 0 <= u0 <= v0 <= 1 componentwise")
    tu = run(_with_initial(config, a))
    tv = run(_with_initial(config, b))
    worst = 0.0
    w_time = w_pos = None
    for (t, fu), (_, fv) in zip(tu.snapshots(), tv.snapshots()):
        gap = fu.values - fv.values
        i = int(np.argmax(gap))
        if gap[i] > worst:
            worst = float(gap[i])
            w_time, w_pos = t, float(fu.grid.x[i])
    return PropertyVerdict(
        "comparison", worst <= tolerance, worst, tolerance, w_time, w_pos
    )


def check_monotone_preservation(u0: Field, config: RunConfig, *, tolerance: float = 1e-9) -> PropertyVerdict:
    """Nonincreasing data must stay nonincreasing on the observation window.

    The violation is the largest positive forward difference u[i+1] - u[i]
    over all snapshots. The periodic seam (and, for nonlocal operators, the
    zone its spurious wrap front contaminates) is excluded via the run's
    seam-margin window; the wrap pair itself never enters the differences.
    """
    vals = u0.values
    if np.any(np.diff(vals) > 0.0):
        raise PreconditionViolated("initial data must be nonincreasing componentwise")
    traj = run(_with_initial(config, vals))
    window = _front_window(traj)
    worst = 0.0
    w_time = w_pos = None
    for t, fld in traj.snapshots():
        diffs = np.diff(fld.values[window])
        if diffs.size == 0:
            continue
        i = int(np.argmax(diffs))
        if diffs[i] > worst:
            worst = float(diffs[i])
            w_time, w_pos = t, float(fld.grid.x[window][i])
    return PropertyVerdict(
        "monotone_preservation", worst <= tolerance, worst, tolerance, w_time, w_pos
    )


def check_spreading(
    u0: Field,
    config: RunConfig,
    c: float,
    *,
    level_target: float = 0.9,
    tolerance: float = 1e-3,
) -> PropertyVerdict:
    """The solution must fill (0, c * t_end) up to the target level by t_end.

    The window (0, c*t_end) is fixed; its minimum on the final snapshot must
    reach level_target and the sequence of window minima over snapshots must
    be nondecreasing up to the tolerance (the density in the window only
    builds up). Distinguishes accelerating dispersal from finite-speed
    classical diffusion, which fails for c above its front speed.
    """
    vals = u0.values
    if not np.any(vals > 0.0):
        raise ZeroInitialCondition("spreading check needs u0 not identically 0")
    if not c > 0:
        raise PreconditionViolated(f"speed must be positive, got {c!r}")
    grid_x = u0.grid.x
    guard_start = u0.grid.L * (1.0 - 2.0 * max(1, u0.grid.n // 100) / u0.grid.n)
    if c * config.t_end >= guard_start:
        raise DomainTooSmall(
            f"window (0, {c * config.t_end:g}) overlaps the guard band near L={u0.grid.L:g}"
        )
    traj = run(_with_initial(config, vals))
    mask = (grid_x > 0.0) & (grid_x < c * config.t_end)
    if not mask.any():
        raise DomainTooSmall("the window (0, c*t_end) contains no nodes")
    minima = [(t, float(fld.values[mask].min())) for t, fld in traj.snapshots()]
    final_min = minima[-1][1]
    backslide = 0.0
    for (_, lo0), (_, lo1) in zip(minima, minima[1:]):
        backslide = max(backslide, lo0 - lo1)
    violation = max(level_target - final_min, backslide, 0.0)
    detail = f"final_min={final_min:.6g} target={level_target:g} backslide={backslide:.3g}"
    return PropertyVerdict(
        "spreading", violation <= tolerance, violation, tolerance,
        minima[-1][0], None, detail,
    )


def check_mass_neutral(config: RunConfig, *, tolerance: float = 1e-9) -> PropertyVerdict:
    """With reaction off, a linear dispersal step must conserve the mean."""
    if not isinstance(config.dispersal, LINEAR_VARIANTS):
        raise NonlinearVariant(
            f"{type(config.dispersal).__name__} is not a linear dispersal variant"
        )
    traj = run(replace(config, reaction=None))
    means = [float(f.values.mean()) for _, f in traj.snapshots()]
    drifts = [abs(mu - means[0]) for mu in means]
    worst = max(drifts)
    w_time = traj.times[int(np.argmax(drifts))]
    return PropertyVerdict(
        "mass_neutrality", worst <= tolerance, worst, tolerance, w_time, None
    )
