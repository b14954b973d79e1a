"""Build the discrete model of configurations of n particles on a star graph.

The model of F_n(Gamma_k) is a finite graph: vertices are discrete
configurations (center / leaf / edge-interior slots, with the outermost
particle of a nonempty edge forced onto its leaf), edges are single-particle
moves at the central vertex. Its first Betti number is the rank of the
braid group of the star, given in closed form by Ghrist's formula.
"""
from starconfig import betti, build_complex, cycle_basis, ghrist_rank

c = build_complex(2, 3)
print(f"two particles on a 3-star: {c.num_vertices} vertices, "
      f"{c.num_edges} moves, betti {betti(c)}")
print("first three states:", ", ".join(s.encode() for s in c.vertices[:3]))
print("one essential cycle:", sorted(cycle_basis(c)[0].items()))
print()

print("rank of H1 against the closed formula:")
print(f"{'n':>3} {'k':>3} {'|V|':>7} {'|E|':>7} {'b1':>6} {'formula':>8}")
for k in (3, 4, 5):
    for n in range(1, 5):
        c = build_complex(n, k)
        b0, b1 = betti(c)
        q = ghrist_rank(n, k)
        marker = "" if (b0, b1) == (1, q) else "  <-- MISMATCH"
        print(f"{n:>3} {k:>3} {c.num_vertices:>7} {c.num_edges:>7} "
              f"{b1:>6} {q:>8}{marker}")
print()

dot = build_complex(2, 3).to_dot()
print(f"DOT export of the 18-vertex complex starts with: {dot.splitlines()[0]}")
print(f"({len(dot.splitlines())} lines; pipe into graphviz to draw the "
      f"hexagon with three whiskers)")
