#!/usr/bin/env python3
"""The block-matrix witnesses: the corner product, the u/v pair, and the
invertible parameter matrices gamma/alpha/beta.

Run:  python demos/03_witness_matrices.py
"""

from matsemi.maps import identity_map, zero_map
from matsemi.rings import make_gaussian, make_matrix_ring, make_zmod, units
from matsemi.witness import (
    build_uv_pair,
    corner_product_identity_check,
    fourth_power_reduction,
    invertible_witness_matrices,
    uv_product_identity_check,
)

z4 = make_zmod(4)
g3 = make_gaussian(3)

# [[1,a],[0,0]] [[b,0],[1,0]] = [[a+b,0],[0,0]] is a ring identity;
# scanning all pairs confirms it wholesale.
for ring in (z4, g3):
    rep = corner_product_identity_check(ring)
    print(f"corner product identity on {ring.label}: "
          f"{rep.counts['checked']} pairs, pass={rep.passed}")

# The u/v pair: the product's upper-left corner is a+b, which is what the
# doubling argument reads off.  Invertibility is decided by inverse scan.
rep = uv_product_identity_check(g3)
print(f"u/v product identity on {g3.label}: pass={rep.passed}")
p = build_uv_pair(g3, g3.i_elem, g3.i_elem)
print("u =", p.u.tolist(), " v =", p.v.tolist())
print("uv upper-left =", g3.render(int(p.uv[0, 0])),
      " u invertible:", p.u_invertible, " v invertible:", p.v_invertible)

# A singular u still satisfies the identity; only invertibility changes.
z2 = make_zmod(2)
p = build_uv_pair(z2, 1, 0)
print("over Z2, u =", p.u.tolist(), "is invertible:", p.u_invertible,
      "; identity still holds:", p.identity_holds)

# gamma_c, alpha_a, beta_b are invertible for every unit lambda; verified
# against all 2x2 candidates, with no determinant shortcut.
for lam in units(z4):
    gam, alp, bet = invertible_witness_matrices(z4, int(lam), 2, 2, 2)
    print(f"lambda={int(lam)}: gamma {gam.matrix.tolist()} inv={gam.invertible}, "
          f"alpha inv={alp.invertible}, beta inv={bet.invertible}")

# The fourth-power reduction: from the imaginary-unit relation down to the
# corner relation, with phi(0) reported rather than assumed.
m2g3 = make_matrix_ring(g3, 2)
for phi in (identity_map(m2g3.ring), zero_map(m2g3.ring, m2g3.ring)):
    rep = fourth_power_reduction(phi)
    print("fourth-power reduction:", rep.passed,
          " phi(0)=0:", bool(rep.counts["phi_zero_is_zero"]),
          " (iP+iQ)^4=phi(1):", bool(rep.counts["fourth_power_identity"]))
