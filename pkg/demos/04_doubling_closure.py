#!/usr/bin/env python3
"""The doubling recursion: pairwise additivity on a pool of invertibles,
doubled level by level to sums of sixteen, with conflicts pinpointed.

Run:  python demos/04_doubling_closure.py
"""

import json

from matsemi.maps import identity_map, power_map
from matsemi.rings import make_gaussian, make_zmod
from matsemi.verify import replay_doubling_trace
from matsemi.witness import doubling_additivity_closure

z4 = make_zmod(4)

# A genuine ring homomorphism: no conflicts, and the certified extension
# reproduces the map on everything reachable as a sum of units.
tr = doubling_additivity_closure(identity_map(z4), "units", depth=4)
print("identity on Z4, units pool, depth 4:")
print("  conflicts:", tr.conflicts_total)
print("  extension:", tr.extension())

# The cube map is multiplicative on units but not additive; the very first
# doubling level catches it at the pair (1, 1).
cube = power_map(z4, 3)
tr = doubling_additivity_closure(cube, "units", depth=1)
print("\nx -> x^3 on Z4, depth 1:")
for c in tr.conflicts:
    print(f"  conflict at level {c.level}, pair ({c.a}, {c.b}): "
          f"asserted phi({c.elem}) = {c.expected}, table says {c.actual}")

# Unitary pool over the Gaussian ring: four unitaries reach all nine
# elements within two doublings.
g3 = make_gaussian(3)
tr = doubling_additivity_closure(identity_map(g3), "unitaries", depth=2)
print("\nidentity on Z3[i], unitaries pool, depth 2:")
print("  pool:", [g3.render(int(u)) for u in tr.pool])
print("  covered:", [g3.render(int(e)) for e in tr.covered()])

# Traces serialize with stable field order and replay exactly.
doc = tr.to_json()
identical, _ = replay_doubling_trace(json.loads(json.dumps(doc)))
print("\ntrace replay identical:", identical)
