"""Injections with colored, ordered complements acting on complexes.

Adding particles at the leaves of a k-star is governed by a category whose
morphisms are injections together with a k-coloring of the missed elements
and an insertion order per color. Every morphism factors as elementary
insertions followed by a permutation, and the factorization acts on the
configuration complexes.
"""
from starconfig import (
    act,
    build_complex,
    compose,
    count_morphisms,
    decompose,
    elementary_insertion,
    enumerate_morphisms,
    FioMorphism,
)

print("hom-set sizes m! * C(m - n + d - 1, d - 1):")
for d in (2, 3):
    row = [count_morphisms(n, 3, d).morphisms for n in range(0, 4)]
    print(f"  d={d}, target [3], source [0..3]: {row}")
print()

inner = elementary_insertion(1, 2, 3)    # add element 2 with color 2
outer = elementary_insertion(2, 1, 3)    # then element 3 with color 1
combined = compose(outer, inner)
print("composition of two elementary insertions:")
print("  ", combined.to_json())
sigma, colors = decompose(combined)
print(f"  decomposes back into insertions of colors {colors} and "
      f"permutation {sigma}")
print()

print("the same morphism acts on configuration complexes of the 3-star:")
complexes = {n: build_complex(n, 3) for n in (1, 2, 3)}
amap = act(combined, complexes)
source_state = complexes[1].vertices[0]
image_state = complexes[3].vertices[amap.vertex_map[0]]
print(f"  {source_state.encode()}  ->  {image_state.encode()}")
print()

swap = FioMorphism(3, 3, 3, (1, 3, 2), ())
print("relabeling through a permutation morphism:")
relabeled = act(swap, complexes)
print(f"  sends state {complexes[3].vertices[0].encode()} to "
      f"{complexes[3].vertices[relabeled.vertex_map[0]].encode()}")
print()

print("all six morphisms [0] -> [1] with two colors, in enumeration order:")
for f in enumerate_morphisms(0, 1, 2):
    print("  ", f.to_json())
