"""Where the closed-foot lamp relation differs from the others.

Fork the single cell once, then fork the cell directly below the new foot.
The second lamp's foot lies on the upper border of the first lamp's
illuminated set. So "foot inside the closed set" relates the two lamps,
while "foot inside the interior", the body relations and the congruence
order all leave them incomparable.
"""
from srlat.congruence import ConLattice, phi
from srlat.constructions import Recipe, Step, replay
from srlat.lamps import lamp_by_key, lamp_relations

recipe = Recipe((1, 1), (Step("multifork", "g_1_1", 1), Step("multifork", "s1_f1", 1)))
L = replay(recipe).current
rel = lamp_relations(L)
print("closed foot only:  ", sorted(rel.foot - rel.infoot))
print("open foot only:    ", sorted(rel.infoot - rel.foot))
print("all relations equal:", rel.equal)

I, J = (lamp_by_key(L, k) for k in ("s1_f1", "s2_f1"))
con = ConLattice(L)
a, b = phi(L, I), phi(L, J)
print(f"\ncongruences: con({I.foot}) <= con({J.foot}): {a <= b};  reverse: {b <= a}")
print(f"Con(L) has {len(con)} members")
