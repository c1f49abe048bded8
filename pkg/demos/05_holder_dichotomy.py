"""Empirical Holder regularity: the rank-one family is bounded in the
exponent-1/2 class and escapes every stronger one; near the chamber wall it
is merely continuous.

Run:  python demos/05_holder_dichotomy.py   (about half a minute)
"""

import numpy as np

from sphreg import asymptotics as asy
from sphreg.accept import HOLDER_XI, cesaro_two_frequency, holder_family

# Sup Holder quotients of the spectral sweep on a uniform chamber grid.
family, grid = holder_family()
print(f"family: spectral direction {HOLDER_XI}, "
      f"sweep t in {sorted(family)}, grid of {grid.size} points")
for alpha in (0.5, 0.6, 0.7):
    report = asy.holder_estimate(family, grid, 0, alpha)
    quotients = " ".join(f"{q:.3f}" for q in report.sup_quotients)
    print(f"alpha={alpha}: {report.verdict:8s} growth {report.growth_ratio:5.2f}  [{quotients}]")

# The calibration example: cos(t x)/sqrt(t) shows the same dichotomy.
grid = np.linspace(0.0, 1.0, 4097)
cosine = {float(t): np.cos(t * grid) / t ** 0.5 for t in (2 ** k for k in range(4, 12))}
for alpha in (0.5, 0.7):
    report = asy.holder_estimate(cosine, grid, 0, alpha)
    print(f"cosine model alpha={alpha}: {report.verdict}, growth {report.growth_ratio:.2f}")

# Chamber wall: quotients along theta ~ n^{-2} blow up, an interior point not.
report = asy.singular_blowup_check(np.geomspace(1e-8, 0.49, 400),
                                   [10, 100, 1000, 10_000])
print("\nwall quotients:", [f"{q:.2f}" for q in report.wall_quotients],
      f"(growth {report.wall_growth:.1f})")
print("interior quotients:", [f"{q:.2f}" for q in report.interior_quotients],
      f"(spread {report.interior_ratio:.2f})")

# The separation mechanism behind sharpness: Cesaro means of two-frequency
# exponential sums stay bounded below.
print("\ntwo-frequency Cesaro mean:", f"{cesaro_two_frequency():.6f}",
      "(lower bound 1.0)")
