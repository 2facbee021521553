"""Tour of the scalar layer: filters, cascade samples, quadrature.

Prints the filter axioms for every built-in filter, then samples the
db2 pair on a dyadic grid and checks integrals and vanishing moments.
"""

import numpy as np

from vecwave import (
    filter_by_name,
    filter_deviations,
    moment,
    quad_inner,
    refine_sample,
)

names = ["haar"] + [f"db{n}" for n in range(2, 11)]
print("filter axioms (worst deviation per check)")
for name in names:
    filt = filter_by_name(name)
    dev = filter_deviations(filt)
    print(
        f"  {name:5} taps={filt.length:2d} N={filt.vanishing_moments:2d} "
        f"sum={dev['sum']:.1e} orth={dev['orthonormality']:.1e} "
        f"moments={dev['moments']:.1e}"
    )

filt = filter_by_name("db2")
J = 10
phi = refine_sample(filt, "scaling", J)
psi = refine_sample(filt, "wavelet", J)
print(f"\ndb2 sampled at step 2^-{J}")
print(f"  phi support [{phi.start * phi.step}, {(phi.start + len(phi.values)) * phi.step})")
print(f"  psi support [{psi.start * psi.step}, {(psi.start + len(psi.values)) * psi.step})")
print(f"  integral phi      = {moment(phi, 0):+.12f}   (want 1)")
print(f"  <phi, phi>        = {quad_inner(phi, phi):+.12f}   (want 1)")
print(f"  <phi, psi>        = {quad_inner(phi, psi):+.2e}   (want 0)")
for p in range(filt.vanishing_moments):
    print(f"  moment p={p} of psi = {moment(psi, p):+.2e}   (want 0)")

# quadrature error shrinks as the grid refines
print("\n<phi, phi(.-1)> error by grid level")
for J in (8, 10, 12):
    a = refine_sample(filt, "scaling", J)
    b = type(a)(a.start + 2**J, a.level, a.values)
    print(f"  J={J}: {abs(quad_inner(a, b)):.3e}")
