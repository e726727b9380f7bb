"""Lamps carry the congruence structure.

Every neon tube (a cover edge ending in a meet-irreducible element) belongs
to exactly one lamp. Ordering lamps by whether the foot of one is inside the
illuminated set of the other gives a poset, and that poset matches the
poset of join-irreducible congruences. Here we check that on a lattice built
by two stacked forks.
"""
from srlat.congruence import jir_con_poset, phi
from srlat.constructions import Recipe, Step, replay
from srlat.lamps import lamp_covers, lamp_poset, lamps
from srlat.posets import find_isomorphism

recipe = Recipe((2, 1), (Step("multifork", "g_1_1", 2), Step("multifork", "s1_f1", 1)))
L = replay(recipe).current
print(f"{L.n} elements")

for lamp in lamps(L):
    covers = lamp_covers(L, lamp) if lamp.internal else set()
    print(f"  lamp {lamp.foot:>6s} -> {lamp.peak:6s} {lamp.kind:15s} "
          f"{len(lamp.tubes)} tube(s), covered by {sorted(covers)}")

P = lamp_poset(L)
J = jir_con_poset(L)
print("\nlamp poset covers:", sorted(P.cover_pairs()))
print("isomorphic to the join-irreducible congruences:", find_isomorphism(P, J) is not None)

inner = next(lamp for lamp in lamps(L) if lamp.internal)
print(f"\ncongruence generated by the lamp at {inner.foot}:")
print("  ", phi(L, inner).nontrivial_blocks())
