"""Scalar observables of a snapshot or a trajectory: range bounds, level
positions, stretching between levels, interface width, windowed flatness,
and fitted front speeds.

Essential inf/sup over half-lines are realized as running extrema over grid
nodes, with linear interpolation between the straddling node pair for
sub-grid positions. The level position x_lambda is the discrete analog of

    inf { x : sup over (x, +inf) of u < lambda }

scanned from the right end, so for bump-like data it tracks the right-moving
interface. It is +inf when lambda <= min(u) and -inf when lambda > max(u).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .errors import (
    InfinitePosition,
    InsufficientPoints,
    LambdaOutOfRange,
    ThresholdsNotSpanned,
    WindowOutOfDomain,
)
from .grid import Field

__all__ = [
    "range_bounds",
    "level_position",
    "stretching",
    "interface_width",
    "flatness",
    "LevelTrace",
    "speed_fit",
    "SnapshotDiagnostics",
    "DiagnosticsReport",
    "build_report",
]


def range_bounds(field: Field) -> tuple:
    """(min, max) over the nodes; discrete stand-ins for ess inf / ess sup."""
    vals = field.values
    return float(vals.min()), float(vals.max())


def _window_slice(field: Field, x_max: Optional[float]) -> slice:
    if x_max is None:
        return slice(None)
    hi = int(np.searchsorted(field.grid.x, x_max, side="right"))
    if hi < 2:
        raise WindowOutOfDomain(f"x_max={x_max!r} leaves no usable nodes")
    return slice(0, hi)


def _falling_crossing(xs: np.ndarray, profile: np.ndarray, level: float) -> float:
    """Interpolated abscissa where a nonincreasing profile drops below level.

    The rightmost straddling pair is used; the caller guarantees the profile
    starts at or above level and ends below it.
    """
    above = np.nonzero(profile >= level)[0]
    i = above[-1]
    if i == len(profile) - 1:
        return float(xs[i])
    p0, p1 = profile[i], profile[i + 1]
    frac = (p0 - level) / (p0 - p1)
    return float(xs[i] + frac * (xs[i + 1] - xs[i]))


def level_position(field: Field, lam: float, *, x_max: Optional[float] = None) -> float:
    """Rightmost position where the running maximum from the right crosses lam.

    Returns +inf when lam <= min(u) (the level is attained arbitrarily far
    right) and -inf when lam > max(u). An optional x_max restricts the scan,
    which front-mode runs use to exclude the seam-contaminated zone.
    """
    if not (0.0 < lam < 1.0):
        raise LambdaOutOfRange(f"level must lie in (0, 1), got {lam!r}")
    sl = _window_slice(field, x_max)
    vals = field.values[sl]
    xs = field.grid.x[sl]
    if lam > float(vals.max()):
        return float("-inf")
    if lam <= float(vals.min()):
        return float("inf")
    rmax = np.maximum.accumulate(vals[::-1])[::-1]
    if rmax[-1] >= lam:
        # running sup never drops below lam inside the scanned window
        return float("inf")
    return _falling_crossing(xs, rmax, lam)


def stretching(field: Field, a: float, b: float, *, x_max: Optional[float] = None) -> float:
    """Distance x_a - x_b between a lower and a higher level, a < b.

    Nonnegative up to one interpolation cell for profiles monotone from the
    right; its growth in time is the stretching signature of accelerating
    fronts. Raises InfinitePosition when either position is a sentinel.
    """
    if not (0.0 < a < b < 1.0):
        raise LambdaOutOfRange(f"need 0 < a < b < 1, got a={a!r}, b={b!r}")
    xa = level_position(field, a, x_max=x_max)
    xb = level_position(field, b, x_max=x_max)
    if not (np.isfinite(xa) and np.isfinite(xb)):
        raise InfinitePosition(f"x_{a:g}={xa!r}, x_{b:g}={xb!r}")
    return xa - xb


def interface_width(
    field: Field,
    *,
    hi: float = 2.0 / 3.0,
    lo: float = 1.0 / 3.0,
    x_max: Optional[float] = None,
) -> float:
    """Width of the transition zone between the hi and lo occupancy levels.

    The left edge is where the running minimum (taken rightward from the
    profile's peak) falls below hi; the right edge is where the running
    maximum from the right falls below lo. Starting the minimum scan at the
    peak makes the same definition cover both monotone fronts (peak at the
    left end) and bump-shaped profiles, where it measures the right-moving
    interface. Raises ThresholdsNotSpanned when the profile does not reach
    both levels; the result is clipped at 0 against interpolation slack.
    """
    sl = _window_slice(field, x_max)
    vals = field.values[sl]
    xs = field.grid.x[sl]
    if float(vals.max()) < hi or float(vals.min()) > lo:
        raise ThresholdsNotSpanned(
            f"field range [{vals.min():g}, {vals.max():g}] does not span [{lo:g}, {hi:g}]"
        )
    i0 = int(np.argmax(vals))
    tail = vals[i0:]
    tail_x = xs[i0:]
    run_min = np.minimum.accumulate(tail)
    run_max = np.maximum.accumulate(tail[::-1])[::-1]
    if run_min[-1] >= hi or run_max[-1] >= lo:
        raise ThresholdsNotSpanned(
            "profile right of its peak does not descend through both thresholds"
        )
    xi_minus = _falling_crossing(tail_x, run_min, hi)
    xi_plus = _falling_crossing(tail_x, run_max, lo)
    return max(xi_plus - xi_minus, 0.0)


def flatness(field: Field, lam: float, radius: float, *, x_max: Optional[float] = None) -> tuple:
    """Deviation from lam over windows of the given radius beside x_lambda.

    Returns (left_dev, right_dev): the largest |u - lam| over nodes in
    [x_lam - radius, x_lam] and [x_lam, x_lam + radius]. Raises
    InfinitePosition for sentinel positions and WindowOutOfDomain when a
    window extends past the grid.
    """
    pos = level_position(field, lam, x_max=x_max)
    if not np.isfinite(pos):
        raise InfinitePosition(f"x_{lam:g} = {pos!r}")
    xs = field.grid.x
    if pos - radius < xs[0] or pos + radius > xs[-1]:
        raise WindowOutOfDomain(
            f"window [{pos - radius:g}, {pos + radius:g}] exceeds [{xs[0]:g}, {xs[-1]:g}]"
        )
    vals = field.values
    left = (xs >= pos - radius) & (xs <= pos)
    right = (xs >= pos) & (xs <= pos + radius)
    left_dev = float(np.max(np.abs(vals[left] - lam))) if left.any() else 0.0
    right_dev = float(np.max(np.abs(vals[right] - lam))) if right.any() else 0.0
    return left_dev, right_dev


# ---------------------------------------------------------------------------
# time series
# ---------------------------------------------------------------------------

@dataclass
class LevelTrace:
    """Time series of one level position; sentinels +-inf are kept in place."""

    lam: float
    times: np.ndarray
    positions: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.positions = np.asarray(self.positions, dtype=float)
        if self.times.shape != self.positions.shape:
            raise LambdaOutOfRange("trace times and positions must align")
        if np.any(np.diff(self.times) <= 0):
            raise InsufficientPoints("trace times must be strictly increasing")


def speed_fit(trace: LevelTrace, t_min: float, t_max: float) -> float:
    """Least-squares slope of position vs time over [t_min, t_max].

    Sentinel (infinite) positions are excluded; at least three finite points
    are required.
    """
    mask = (trace.times >= t_min) & (trace.times <= t_max) & np.isfinite(trace.positions)
    if int(mask.sum()) < 3:
        raise InsufficientPoints(
            f"{int(mask.sum())} finite points in [{t_min:g}, {t_max:g}]; need >= 3"
        )
    t = trace.times[mask]
    x = trace.positions[mask]
    tc = t - t.mean()
    return float(np.dot(tc, x) / np.dot(tc, tc))


# ---------------------------------------------------------------------------
# per-trajectory report
# ---------------------------------------------------------------------------

_CANONICAL_LEVELS = (0.4, 0.5, 0.6)


@dataclass
class SnapshotDiagnostics:
    t: float
    m: float
    M: float
    levels: dict
    stretch: float
    width: float
    flat_left: float
    flat_right: float


@dataclass
class DiagnosticsReport:
    """Per-snapshot observables plus level traces and fitted speeds."""

    rows: list = dc_field(default_factory=list)
    traces: dict = dc_field(default_factory=dict)
    speeds: dict = dc_field(default_factory=dict)
    stretch_pair: tuple = (0.4, 0.6)
    flat_level: float = 0.5
    flat_radius: float = 5.0

    @property
    def times(self) -> np.ndarray:
        return np.asarray([r.t for r in self.rows])


def build_report(
    traj,
    *,
    lambdas: Optional[tuple] = None,
    stretch_pair: Optional[tuple] = None,
    flat_level: Optional[float] = None,
    flat_radius: Optional[float] = None,
    speed_window: Optional[tuple] = None,
    x_max: Optional[float] = None,
) -> DiagnosticsReport:
    """Evaluate the full diagnostic set on every snapshot of a trajectory.

    Quantities that are undefined on a given snapshot (sentinel positions,
    thresholds not spanned, windows leaving the domain) are recorded as nan
    rather than aborting the report. Front-mode trajectories are evaluated on
    the seam-margin window automatically.
    """
    cfg = traj.config
    levels = set(_CANONICAL_LEVELS)
    levels.update(cfg.lambdas if lambdas is None else lambdas)
    levels = tuple(sorted(levels))
    pair = tuple(stretch_pair if stretch_pair is not None else cfg.stretch_pair)
    f_level = cfg.flat_level if flat_level is None else flat_level
    f_radius = cfg.flat_radius if flat_radius is None else flat_radius
    if x_max is None and traj.guard_mode == "front":
        x_max = traj.grid.L * (1.0 - cfg.seam_margin_frac)

    report = DiagnosticsReport(
        stretch_pair=pair, flat_level=f_level, flat_radius=f_radius
    )
    positions = {lam: [] for lam in levels}
    for t, fld in traj.snapshots():
        lo, hi = range_bounds(fld)
        assert 0.0 <= lo <= hi <= 1.0, "clamped snapshot left [0, 1]"
        row_levels = {}
        for lam in levels:
            pos = level_position(fld, lam, x_max=x_max)
            row_levels[lam] = pos
            positions[lam].append(pos)
        try:
            s = stretching(fld, pair[0], pair[1], x_max=x_max)
        except InfinitePosition:
            s = float("nan")
        try:
            w = interface_width(fld, x_max=x_max)
        except ThresholdsNotSpanned:
            w = float("nan")
        try:
            fl, fr = flatness(fld, f_level, f_radius, x_max=x_max)
        except (InfinitePosition, WindowOutOfDomain):
            fl, fr = float("nan"), float("nan")
        report.rows.append(
            SnapshotDiagnostics(t, lo, hi, row_levels, s, w, fl, fr)
        )

    times = [t for t, _ in traj.snapshots()]
    for lam in levels:
        if len(times) >= 2:
            report.traces[lam] = LevelTrace(lam, times, positions[lam])
    if speed_window is None and len(times) >= 3:
        # trailing quarter, widened so it always holds >= 4 snapshot times
        start = min(0.75 * times[-1], times[max(0, len(times) - 4)])
        speed_window = (start, times[-1])
    if speed_window is not None:
        for lam, trace in report.traces.items():
            try:
                report.speeds[lam] = speed_fit(trace, *speed_window)
            except InsufficientPoints:
                pass
    return report
