"""Build the smallest forked lattice and look at every quotient of its diagram.

Start from the 2x2 grid (a single cell), fork its only cell once, and we get
the seven-element lattice S1. Its congruence lattice has five members. For
each one we collapse the blocks, keep the block maxima at their old
positions, and ask whether what is left is again a slim rectangular
C1-diagram.
"""
from srlat.congruence import ConLattice
from srlat.constructions import grid, insert_multifork
from srlat.diagram import check_c1, check_sr
from srlat.quotient import quotient_diagram

square = grid(1, 1)
s1 = insert_multifork(square, "g_1_1", 1)
print(f"square has {square.n} elements, after one fork: {s1.n}")
for v in s1.labels:
    p, q = s1.coords[v]
    print(f"  {v:6s} at ({p}, {q})")
print("slim rectangular:", check_sr(s1).passed, " C1-diagram:", check_c1(s1).passed)

con = ConLattice(s1)
print(f"\nCon(S1) has {len(con)} congruences")
for alpha in con:
    res = quotient_diagram(s1, alpha)
    blocks = alpha.nontrivial_blocks()
    size = res.diagram.n if res.diagram is not None else "-"
    print(f"  {res.verdict}: {size} elements, blocks {blocks}")
