"""Homology of the chessboard complexes that arise as cover nerves.

Covering the (n+1)-particle complex by "particle i outermost on edge j"
produces a nerve whose simplices are non-attacking rook placements on an
(n+1) x k board. Its low homology controls how first homology classes are
generated and presented as particles are added.
"""
from starconfig import nerve

print("the 4 x 3 board is a torus:")
nv = nerve(4, 3)
print("  cells:", nv.complex.counts())
for q in range(3):
    print(f"  H_{q} =", nv.homology(q).group())
print()

print("first homology of small boards (rows x cols):")
for m, k in [(3, 3), (4, 3), (5, 3), (3, 4), (4, 4), (3, 5)]:
    print(f"  {m} x {k}: H_1 = {nerve(m, k).homology(1).group()}")
print()

print("second homology of the 3-column boards grows cubically:")
for m in (5, 6, 7):
    n = m - 1
    b2 = nerve(m, 3).homology(2).betti
    print(f"  {m} x 3: rank H_2 = {b2}   (n^3 - 3n^2 - n + 2 = "
          f"{n**3 - 3*n**2 - n + 2})")
print()

print("the 5 x 5 board hides torsion that mod-2 coefficients cannot see:")
integral = nerve(5, 5).homology(2)
print("  integral H_2 =", integral.group())
print("  rank over Z/2 =", nerve(5, 5).homology(2, coeff=2).betti)
print("  rank over Z/3 =", nerve(5, 5).homology(2, coeff=3).betti)
print()

print("the 6 x 4 board is detected by mod-2 coefficients:")
print("  integral H_2 =", nerve(6, 4).homology(2).group())
print("  rank over Z/2 =", nerve(6, 4).homology(2, coeff=2).betti)
