"""Grow lamp posets on purpose.

A brother sum adds a new element with the same upper covers as an old one.
Thrusting a new lamp right under an existing lamp does this geometrically.
A j-sum hangs a second poset below one element; here the second lattice is
replayed inside four unused neon tubes of the first.
"""
from srlat.constructions import Recipe, Step, replay
from srlat.realize import realize_brosum, realize_jsum

s1 = replay(Recipe((1, 1), (Step("multifork", "g_1_1", 1),)))

twin = realize_brosum(s1, "g_1_1")
print("brother sum at the internal lamp:")
print("  expected covers:", sorted(twin.expected.cover_pairs()))
print("  achieved covers:", sorted(twin.achieved.cover_pairs()))
print(f"  lattice grew from {s1.current.n} to {twin.state.current.n} elements")

glued = realize_jsum(s1, "g_1_1", Recipe((2, 1)))
print("\nj-sum with the lamp poset of a 3x2 grid (a 3-antichain):")
print("  achieved:", len(glued.achieved), "lamps,", sorted(glued.achieved.cover_pairs()))
print(f"  realized on {glued.state.current.n} elements")
