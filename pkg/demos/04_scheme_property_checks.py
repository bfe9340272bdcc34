"""Executable sanity checks on the discrete solver.

The continuum equations obey a comparison principle, preserve spatial
monotonicity, spread over linearly growing regions, and conserve mass under
dispersal alone. A scheme that breaks any of these cannot be trusted to
reproduce front behavior, so the package ships each one as a runnable check
with an explicit tolerance.

Run:  python demos/04_scheme_property_checks.py
"""

import numpy as np

import fastfronts as ff

rng = np.random.default_rng(42)
verdicts = []

# Ordered data must stay ordered, and dispersal alone must conserve the
# mean. Both run on a mid-sized fractional-operator box.
frac = ff.RunConfig(L=1500.0, N=2**13, dispersal=ff.FractionalLaplacian(0.9),
                    t_end=8.0, dt=0.02)
u0, v0 = ff.ordered_gaussian_pair(frac.grid(), rng)
verdicts.append(ff.check_comparison(u0, v0, frac))
verdicts.append(ff.check_mass_neutral(frac))

# Density must fill (0, c * t_end). c=2 is already the classical speed
# limit; the accelerating operator clears it with time to spare.
bump = ff.Field(frac.grid(), np.exp(-frac.grid().x**2 / 100.0))
verdicts.append(ff.check_spreading(bump, frac, c=2.0))

# Nonincreasing data must stay nonincreasing. Fat-tailed operators leak
# around the periodic seam, so this check runs on a documented window well
# inside the box (seam_margin_frac); the kernel operator at this size needs
# about a third of the half-length as margin.
conv = ff.RunConfig(L=2000.0, N=2**14, seam_margin_frac=0.35,
                    dispersal=ff.Convolution(ff.StretchedExponential(0.5, 1.0)),
                    t_end=5.0)
verdicts.append(ff.check_monotone_preservation(ff.smoothed_step(conv.grid()), conv))

print(ff.verdict_report(verdicts), end="")

# The same machinery fails when it should: a window expanding at speed 40
# outruns even the accelerating operator on an eight-unit horizon.
print("\nand a deliberately impossible spreading demand fails:")
fast = ff.check_spreading(bump, frac, c=40.0)
print(fast.line(), f"  ({fast.detail})")

# Custom reaction terms pass through the same gatekeeping: they must vanish
# at 0 and 1, stay positive in between, and grow away from 0.
print("\nreaction validation:")
good = ff.CustomMonostable(lambda u: 2.0 * u * (1.0 - u) * (1.0 + u))
ff.validate_reaction(good)
print("  2 u (1-u) (1+u): accepted")
for label, bad in (
    ("u (1-u) (u-0.3)", lambda u: u * (1.0 - u) * (u - 0.3)),
    ("u (1.1-u)", lambda u: u * (1.1 - u)),
):
    try:
        ff.validate_reaction(ff.CustomMonostable(bad))
    except ff.FastFrontsError as exc:
        print(f"  {label}: rejected ({type(exc).__name__})")
