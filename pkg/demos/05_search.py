#!/usr/bin/env python3
"""Generator-driven enumeration: counterexample mining and unique addition.

Run:  python demos/05_search.py
"""

from matsemi.maps import is_additive
from matsemi.rings import make_gaussian, make_zmod, parse_ring_spec
from matsemi.search import (
    enumerate_multiplicative_maps,
    find_counterexamples,
    monoid_generators,
    unique_addition_probe,
)

z4 = make_zmod(4)

# Greedy generating set of the multiplicative monoid: the identity gets
# the empty word, everything else a product expression over the gens.
gs = monoid_generators(z4)
print("Z4 multiplicative monoid generators:", gs.gens)
print("words:", {e: list(w) for e, w in enumerate(gs.words)})

# Enumerate all multiplicative self-maps (lexicographic order, exhaustive).
res = enumerate_multiplicative_maps(z4, z4)
print("\nmultiplicative self-maps of Z4:", len(res.maps),
      "(nodes:", res.nodes, ", exhaustive:", res.exhaustive, ")")
for m in res.maps:
    print("  ", m.img.tolist(), " additive:", is_additive(m).passed)

# Counterexample mining returns the multiplicative non-additive maps.
ce = find_counterexamples(z4, z4)
print("\ncounterexamples (multiplicative, not additive):",
      [m.img.tolist() for m in ce])

det_dom = parse_ring_spec("mat:2:zmod:2")
z2 = parse_ring_spec("zmod:2")
ce = find_counterexamples(det_dom, z2)
print("counterexamples M2(Z2) -> Z2:", [m.img.tolist() for m in ce],
      "(the first is the determinant, the other the constant-one map)")

# Unique addition: does the multiplicative monoid determine the addition?
rep = unique_addition_probe(z4, z4)
print("\nunique addition probe on Z4:",
      f"{len(rep.isomorphisms)} multiplicative automorphism(s),",
      "all additive:", rep.unique_addition)

g3 = make_gaussian(3)
rep = unique_addition_probe(g3, g3)
print("unique addition probe on Z3[i]:",
      f"{len(rep.isomorphisms)} automorphisms, additive flags:",
      rep.additive_flags, "-> unique addition:", rep.unique_addition)
