"""Dilation maps that trade anti-Hermitian potentials for Hermitian ones.

exp(r*(xp+px)/2) rescales the quadratures by exp(-+ i r). Choosing the
angle well turns p**2 - x**4 into a phase times p**2 + x**4, and a
quarter-turn-squared (r = pi/2) turns any p**2 + V(ix) into
-p**2 + V(x). All of it is verified here on truncated matrices: each
check conjugates explicitly and reports the worst interior deviation
from the closed-form target, plus the convergence trend when the basis
doubles at a fixed window.
"""

from ptdyn import (
    DeformationParams,
    coherent_map_check,
    deformed_equivalent_check,
    general_deformation_check,
    scale_check,
    wick_parameters,
)

print("quadrature rescaling (r = 0.3, 128-state basis):")
err_x, err_p = scale_check(0.3, 128)
print(f"  S x S^-1 vs exp(-ir) x : {err_x:.2e}")
print(f"  S p S^-1 vs exp(+ir) p : {err_p:.2e}")

print()
print("rotation angles and phases for the deformed oscillator family:")
for eps, k in ((0.0, 0), (2.0, 0), (2.0, 1), (1.0, 1)):
    r, phase, _ = wick_parameters(DeformationParams(eps, k, 256))
    print(f"  eps={eps:3.1f} k={k}: r = {r:+.6f}, phase = "
          f"{phase.real:+.4f}{phase.imag:+.4f}i")

print()
print("deformed oscillator p^2 + x^2 (ix)^eps -> phase * (p^2 + x^(2+eps)):")
for eps, k in ((2.0, 0), (2.0, 1)):
    err = deformed_equivalent_check(DeformationParams(eps, k, 256))
    print(f"  eps={eps:3.1f} k={k}: interior deviation {err:.2e}")

print()
print("half-turn p^2 + V(ix) -> -p^2 + V(x), staged rotation:")
for coeffs, label in (([0.0, 0.0, 1.0], "V = x^2"),
                      ([0.0, 0.0, 0.0, 1.0], "V = x^3")):
    err = general_deformation_check(coeffs, 256)
    print(f"  {label}: interior deviation {err:.2e}")

print()
print("Gaussian map exp(-p^2/2): position operator -> annihilation operator:")
err = coherent_map_check(1.0, 128)
print(f"  T (x/sqrt(2)) T^-1 vs a: interior deviation {err:.2e}")

print()
print("doubling the basis at a fixed window shrinks every deviation:")
m = int(round(0.125 * 128))
pairs = [
    ("quadrature rescaling", max(scale_check(0.3, 128)),
     max(scale_check(0.3, 256, interior_fraction=m / 256.0))),
]
md = max(4, int(round(0.055 * 256)))
pairs.append(("deformed oscillator",
              deformed_equivalent_check(DeformationParams(2.0, 0, 128,
                                                          interior_fraction=md / 128.0)),
              deformed_equivalent_check(DeformationParams(2.0, 0, 256))))
for name, small, big in pairs:
    print(f"  {name}: {small:.2e} -> {big:.2e}")
