"""Accelerating fronts vs the classical traveling pair, at desk scale.

Runs the four dispersal operators of the figure presets on reduced domains
and horizons (seconds instead of minutes) and contrasts two observables:

  * the half-level position x_0.5(t): straight line for the classical
    operator, superlinear for the nonlocal and fast-diffusion operators;
  * the separation x_0.4(t) - x_0.6(t): a plateau for the classical front,
    growth (stretching) for the accelerating ones.

Run:  python demos/03_accelerating_vs_classical.py
The full-scale versions are the fig1a..fig1d / fig2 presets.
"""

from pathlib import Path

import fastfronts as ff
from fastfronts.diagnostics import build_report

out = Path("demo_output")
out.mkdir(exist_ok=True)

T_END = 8.0
cases = {
    "fractional a=0.9": ff.RunConfig(
        L=1200.0, N=2**14, dispersal=ff.FractionalLaplacian(0.9), t_end=T_END),
    "fat-tailed kernel": ff.RunConfig(
        L=600.0, N=2**13,
        dispersal=ff.Convolution(ff.StretchedExponential(0.5, 1.0)), t_end=T_END),
    "fast diffusion g=1/2": ff.RunConfig(
        L=1200.0, N=2**14, dispersal=ff.FastDiffusion(0.5), t_end=T_END),
    "classical": ff.RunConfig(
        L=300.0, N=2**12, dispersal=ff.StandardLaplacian(), t_end=T_END),
}

position_series = []
stretch_series = []
scores = {}
print(f"{'operator':22s}  x_0.5(4)   x_0.5(8)   sep(4)   sep(8)")
for name, cfg in cases.items():
    report = build_report(ff.run(cfg, raise_on_breach=True))
    xs = {row.t: row.levels[0.5] for row in report.rows}
    ss = {row.t: row.stretch for row in report.rows}
    print(f"{name:22s}  {xs[4.0]:8.2f}  {xs[8.0]:9.2f}  {ss[4.0]:7.2f}  {ss[8.0]:7.2f}")
    ts = report.times
    position_series.append((name, ts, [row.levels[0.5] for row in report.rows]))
    stretch_series.append((name, ts, [row.stretch for row in report.rows]))
    scores[name] = ss[8.0] / ss[4.0]

styles = [{}, {"dash": "8,4"}, {"dash": "2,3"}, {"markers": True}]
ff.emit_chart(position_series, out / "positions.svg", styles=styles,
              title="half-level position", x_label="t", y_label="x_0.5")
ff.emit_chart(stretch_series, out / "stretching.svg", styles=styles,
              title="level separation x_0.4 - x_0.6", x_label="t", y_label="distance")
print(f"\nwrote {out / 'positions.svg'} and {out / 'stretching.svg'}")

# Quantify the contrast through the separation growth S(8)/S(4): a settled
# constant-speed front keeps its shape (score near 1), an accelerating one
# stretches. On this short horizon the position itself is still dominated
# by the wide initial bump; the presets run the full-scale version.
print("\nstretching score: separation at t=8 over separation at t=4")
for name, score in scores.items():
    print(f"  {name:22s} {score:5.2f}")
