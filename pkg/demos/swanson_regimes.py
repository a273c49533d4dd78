"""Generalized Swanson oscillator: chain of maps and the regime diagram.

Walks the full transformation chain on one parameter set, prints every
scalar it produces (displacement coefficients, energy shift, squeeze
parameter, effective frequency), compares the closed-form spectrum with
dense eigenvalues of the truncated matrix, and finally sweeps the
regime discriminant through the exceptional point at 1 to produce the
data of the real/imaginary frequency transition plot.
"""

import os

from ptdyn import SwansonParams, discriminant_sweep, gsw_spectrum, transform_chain
from ptdyn.linalg import eig_general

p = SwansonParams(lam=2.0, alpha1=1.0, alpha2=1.0, beta1=0.5, beta2=0.5,
                  n_trunc=128)
chain = transform_chain(p)

print("parameters:", p)
print(f"discriminant d = {chain.discriminant:.6f}  ->  regime {chain.regime}")
print(f"displacement coefficients gamma1 = gamma2 = {chain.gamma1:.6f}")
print(f"energy shift delta = {chain.delta:.6f}")
print(f"squeeze root zeta = {complex(chain.zeta):.6f}")
print(f"effective frequency lambda_tilde = {chain.lambda_tilde:.6f}")
print(f"H2 block deviation from closed form: {chain.h2_block_error:.2e}")
print(f"H3 block deviation from closed form: {chain.h3_block_error:.2e}")

print()
print(" n   closed form      dense matrix     |difference|")
en = gsw_spectrum(p, 10)
numeric = eig_general(chain.h_gsw).eigenvalues[:10]
for n in range(10):
    print(f"{n:2d}   {en[n]:.10f}    {numeric[n].real:.10f}    "
          f"{abs(numeric[n] - en[n]):.2e}")

os.makedirs("output", exist_ok=True)
rows = discriminant_sweep(p.lam, p.alpha1, p.alpha2, p.beta1, 0.0, 2.0, 201)
with open("output/swanson_regimes.csv", "w") as fh:
    fh.write("discriminant,re_lambda_tilde,im_lambda_tilde,regime\n")
    for d, re_l, im_l, regime in rows:
        fh.write(f"{d:.17g},{re_l:.17g},{im_l:.17g},{regime}\n")
transitions = [r[0] for r in rows if r[3] == "Exceptional"]
print()
print(f"discriminant sweep -> output/swanson_regimes.csv "
      f"(exceptional point hit at d = {transitions})")
