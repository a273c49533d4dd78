"""Higher-spin gain/loss lattices and their exceptional points.

For spin j the family eps*I + i*gamma*Jz + k*Jx carries 2j+1 levels
eps + l*sqrt(k**2 - gamma**2), l = -j..j. All of them pinch together at
|k| = gamma where the matrix becomes a single Jordan block: an
exceptional point of order 2j+1. The sweep data for j = 1 and j = 3/2
reproduces the three- and four-level bifurcation diagrams; the middle
level at j = 1 stays pinned at eps throughout.
"""

import os

from ptdyn import SpinParams, classify_region, sweep_spectrum

EPSILON, GAMMA = 2.0, 1.0

os.makedirs("output", exist_ok=True)
for j, tag in ((1.0, "spin1"), (1.5, "spin3half")):
    rows = sweep_spectrum(SpinParams(j, EPSILON, GAMMA, 0.0), -3.0, 3.0, 601)
    path = f"output/lattice_sweep_{tag}.csv"
    with open(path, "w") as fh:
        fh.write("k,level_index,re_E,im_E,regime\n")
        for k, idx, re_e, im_e, regime in rows:
            fh.write(f"{k:.17g},{idx},{re_e:.17g},{im_e:.17g},{regime}\n")
    print(f"j={j}: {len(rows)} rows -> {path}")

print()
print("exceptional-point order grows with the dimension:")
for two_j in (1, 2, 3, 4):
    j = two_j / 2.0
    rep = classify_region(SpinParams(j, EPSILON, GAMMA, GAMMA))
    print(f"  j={j}: dimension {two_j + 1}, order {rep.exceptional_order}, "
          f"geometric multiplicity "
          f"{rep.defect.clusters[0].geometric}")
